//! Scene file parsing and validation.
//!
//! A scene is a TOML document describing one hyperboloid (optionally posed
//! in world coordinates), one sphere, and an optional sweep path. Parse
//! errors surface toml's message, which names the offending field and
//! line; validation errors name the field path explicitly.

use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use relpos_core::geom::{RigidPose, Sphere, StdHyperboloid};
use relpos_core::sweep::CenterPath;
use serde::Deserialize;
use thiserror::Error;

/// Accepted normalization slack on the pose quaternion.
const QUAT_NORM_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read scene file: {0}")]
    Io(#[from] std::io::Error),
    #[error("scene parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid scene: {field}: {message}")]
    Invalid {
        field: &'static str,
        message: String,
    },
}

fn invalid(field: &'static str, message: String) -> SceneError {
    SceneError::Invalid { field, message }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub hyperboloid: HyperboloidSection,
    pub sphere: SphereSection,
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperboloidSection {
    pub a: f64,
    pub c: f64,
    pub pose: Option<PoseSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseSection {
    /// Unit quaternion as `[x, y, z, w]`.
    pub rotation: [f64; 4],
    pub translation: [f64; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereSection {
    pub center: [f64; 3],
    pub r: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub waypoints: Vec<[f64; 3]>,
    pub n_steps: Option<usize>,
}

/// A validated scene, already normalized to the hyperboloid's standard
/// frame: the sphere center and all sweep waypoints are expressed there.
#[derive(Debug, Clone)]
pub struct Scene {
    pub hyperboloid: StdHyperboloid,
    pub sphere: Sphere,
    pub sweep_path: Option<CenterPath>,
    pub sweep_steps: usize,
}

impl SceneFile {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, SceneError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Validates every field and maps the world-posed inputs back to the
    /// standard frame.
    pub fn validate(&self) -> Result<Scene, SceneError> {
        let hyperboloid =
            StdHyperboloid::new(self.hyperboloid.a, self.hyperboloid.c).map_err(|_| {
                invalid(
                    "hyperboloid.a/hyperboloid.c",
                    format!(
                        "semi-axes must be positive, got a = {}, c = {}",
                        self.hyperboloid.a, self.hyperboloid.c
                    ),
                )
            })?;

        let pose = match &self.hyperboloid.pose {
            None => RigidPose::identity(),
            Some(p) => {
                let q = Quaternion::new(p.rotation[3], p.rotation[0], p.rotation[1], p.rotation[2]);
                if (q.norm() - 1.0).abs() > QUAT_NORM_EPS {
                    return Err(invalid(
                        "hyperboloid.pose.rotation",
                        format!("quaternion norm {} is not 1 within 1e-9", q.norm()),
                    ));
                }
                let rotation = UnitQuaternion::from_quaternion(q).to_rotation_matrix();
                RigidPose::new(rotation.into_inner(), Vector3::from(p.translation))
                    .map_err(|e| invalid("hyperboloid.pose", e.to_string()))?
            }
        };

        if !self.sphere.r.is_finite() || self.sphere.r <= 0.0 {
            return Err(invalid(
                "sphere.r",
                format!("radius must be positive, got {}", self.sphere.r),
            ));
        }
        let world_center = Vector3::from(self.sphere.center);
        let sphere = Sphere::new(pose.apply_inverse(&world_center), self.sphere.r)
            .map_err(|e| invalid("sphere", e.to_string()))?;

        let (sweep_path, sweep_steps) = match &self.sweep {
            None => (None, 0),
            Some(sw) => {
                if sw.waypoints.len() < 2 {
                    return Err(invalid(
                        "sweep.waypoints",
                        format!("need at least 2 waypoints, got {}", sw.waypoints.len()),
                    ));
                }
                let steps = sw.n_steps.unwrap_or(200);
                if steps < 2 {
                    return Err(invalid(
                        "sweep.n_steps",
                        format!("need at least 2 steps, got {steps}"),
                    ));
                }
                let pts: Vec<Vector3<f64>> = sw
                    .waypoints
                    .iter()
                    .map(|w| pose.apply_inverse(&Vector3::from(*w)))
                    .collect();
                let path = CenterPath::waypoints(pts)
                    .map_err(|e| invalid("sweep.waypoints", e.to_string()))?;
                (Some(path), steps)
            }
        };

        Ok(Scene {
            hyperboloid,
            sphere,
            sweep_path,
            sweep_steps,
        })
    }
}
