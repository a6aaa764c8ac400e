//! Command implementations behind the `relpos` binary.
//!
//! Each subcommand loads a scene file, normalizes it to the hyperboloid's
//! standard frame, builds a typed report, and prints it as text or JSON.

pub mod report;
pub mod scene;
pub mod svg;

use clap::{Args, Parser, Subcommand};
use relpos_core::charpoly::Tolerances;
use relpos_core::classify::{
    classify_with, contact_status_of, fast_contact_with, regime, ContactStatus, FastVerdict,
    UnclassifiableRoots,
};
use relpos_core::oracle::{
    oracle_contact, oracle_side, sample_surface, GridSpec, OracleContact, OracleSide,
};
use relpos_core::sweep::sweep_with;
use relpos_core::PositionType;
use relpos_core::{cardano, residual_cubic, root_set_with};
use report::*;
use scene::{Scene, SceneError, SceneFile};
use std::path::PathBuf;
use thiserror::Error;

pub use relpos_core as core;

/// Classify the relative position of a circular one-sheet hyperboloid and
/// a sphere, detect contact and tangency, sweep a moving sphere, and
/// cross-check against a sampling oracle.
#[derive(Debug, Parser)]
#[command(name = "relpos", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Scene file (TOML)
    pub scene: PathBuf,
    /// Emit the report as JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Override the relative root-clustering tolerance
    #[arg(long, value_name = "EPS")]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the position type, root set, regime and discriminant
    Classify(CommonArgs),
    /// Print the contact status and, in regime, the fast-path verdict
    Contact(CommonArgs),
    /// Track the classification along the scene's sweep path
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Override the number of sweep samples
        #[arg(long, value_name = "N")]
        steps: Option<usize>,
    },
    /// Write a cross-section drawing of the pair
    Plot {
        /// Scene file (TOML)
        scene: PathBuf,
        /// Output SVG path
        #[arg(short, long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Run the sampling oracle and report agreement with the classifier
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Oracle grid resolution (n x n)
        #[arg(long, value_name = "N", default_value_t = 512)]
        grid: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Scene(#[from] SceneError),
    #[error("{0}")]
    Unclassifiable(#[from] UnclassifiableRoots),
    #[error("oracle disagrees with the classifier (see report above)")]
    OracleDisagreement,
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 invalid scene / IO, 2 unclassifiable roots, 3 oracle disagreement.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Scene(_) | CliError::Io(_) => 1,
            CliError::Unclassifiable(_) => 2,
            CliError::OracleDisagreement => 3,
        }
    }
}

fn load_scene(path: &std::path::Path) -> Result<Scene, CliError> {
    Ok(SceneFile::load(path)?.validate()?)
}

fn tolerances(tol: Option<f64>) -> Tolerances {
    match tol {
        Some(eps) => Tolerances::with_cluster(eps),
        None => Tolerances::default(),
    }
}

fn emit<T: serde::Serialize>(json: bool, report: &T, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports always serialize")
        );
    } else {
        print!("{text}");
    }
}

pub fn build_classify_report(scene: &Scene, tol: &Tolerances) -> Result<ClassifyReport, CliError> {
    let (h, s) = (&scene.hyperboloid, &scene.sphere);
    let kind = classify_with(h, s, tol)?;
    let rs = root_set_with(h, s, tol);
    Ok(ClassifyReport {
        hyperboloid: hyperboloid_json(h),
        sphere: sphere_json(s),
        regime: (&regime(h, s)).into(),
        landmarks: landmarks_json(h, s),
        delta: cardano(&residual_cubic(h, s)).delta,
        roots: RootsJson::from_root_set(&rs),
        position_type: kind.to_string(),
    })
}

pub fn build_contact_report(scene: &Scene, tol: &Tolerances) -> Result<ContactReport, CliError> {
    let (h, s) = (&scene.hyperboloid, &scene.sphere);
    let kind = classify_with(h, s, tol)?;
    let status = contact_status_of(h, s, kind, tol);
    let fast_path = fast_contact_with(h, s, tol).ok().map(|fast| {
        let agrees = matches!(
            (&fast, &status),
            (FastVerdict::NoContact, ContactStatus::NoContact { .. })
                | (FastVerdict::Tangent, ContactStatus::Tangent { .. })
                | (FastVerdict::Contact, ContactStatus::Transversal { .. })
        );
        FastPathJson {
            verdict: fast_verdict_label(fast).to_string(),
            agrees,
        }
    });
    Ok(ContactReport {
        position_type: kind.to_string(),
        contact: (&status).into(),
        fast_path,
    })
}

pub fn build_verify_report(
    scene: &Scene,
    tol: &Tolerances,
    grid_n: usize,
) -> Result<VerifyReport, CliError> {
    let (h, s) = (&scene.hyperboloid, &scene.sphere);
    let kind = classify_with(h, s, tol)?;
    let status = contact_status_of(h, s, kind, tol);

    let grid = sample_surface(h, s, &GridSpec::new(grid_n, grid_n));
    let observed = oracle_contact(&grid);

    let mut side = None;
    let (oracle_label, components, agree) = match &observed {
        Err(inconclusive) => {
            // sampling cannot certify near-tangent configurations; the
            // oracle abstains rather than contradicting the classifier
            (format!("{inconclusive}"), None, true)
        }
        Ok(contact) => {
            let label = oracle_contact_label(contact);
            let components = match contact {
                OracleContact::Contact { components } => Some(*components),
                _ => None,
            };
            let agree = match (kind, contact) {
                (PositionType::I, OracleContact::NoContactOutside) => {
                    let v = oracle_side(h, s, 1000);
                    side = Some(oracle_side_label(v).to_string());
                    v == OracleSide::Interior
                }
                (PositionType::E, OracleContact::NoContactOutside) => {
                    let v = oracle_side(h, s, 1000);
                    side = Some(oracle_side_label(v).to_string());
                    v == OracleSide::Exterior
                }
                (PositionType::C, OracleContact::Contact { components }) => *components == 1,
                (PositionType::Ca | PositionType::Cm, OracleContact::Contact { components }) => {
                    *components == 2
                }
                // a tangent verdict is consistent with any detected contact
                (t, OracleContact::Contact { .. }) if t.is_tangent() => true,
                _ => false,
            };
            (label, components, agree)
        }
    };

    Ok(VerifyReport {
        position_type: kind.to_string(),
        classifier_contact: (&status).into(),
        oracle_contact: oracle_label,
        oracle_components: components,
        oracle_side: side,
        grid: grid_n,
        agree,
    })
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(common) => {
            let scene = load_scene(&common.scene)?;
            let report = build_classify_report(&scene, &tolerances(common.tol))?;
            emit(common.json, &report, report.render_text());
            Ok(())
        }
        Command::Contact(common) => {
            let scene = load_scene(&common.scene)?;
            let report = build_contact_report(&scene, &tolerances(common.tol))?;
            emit(common.json, &report, report.render_text());
            Ok(())
        }
        Command::Sweep { common, steps } => {
            let scene = load_scene(&common.scene)?;
            let path = scene
                .sweep_path
                .clone()
                .ok_or_else(|| SceneError::Invalid {
                    field: "sweep",
                    message: "scene has no [sweep] section".into(),
                })?;
            let n_steps = steps.unwrap_or(scene.sweep_steps);
            let raw = sweep_with(
                &scene.hyperboloid,
                scene.sphere.r(),
                &path,
                n_steps,
                &tolerances(common.tol),
            );
            let report = SweepReportJson::from_report(&raw, n_steps);
            emit(common.json, &report, report.render_text());
            Ok(())
        }
        Command::Plot { scene, out } => {
            let scene = load_scene(&scene)?;
            let label = classify_with(&scene.hyperboloid, &scene.sphere, &Tolerances::default())?
                .to_string();
            let svg = svg::cross_section(&scene.hyperboloid, &scene.sphere, &label);
            std::fs::write(&out, svg)?;
            Ok(())
        }
        Command::Verify { common, grid } => {
            let scene = load_scene(&common.scene)?;
            let report = build_verify_report(&scene, &tolerances(common.tol), grid)?;
            emit(common.json, &report, report.render_text());
            if report.agree {
                Ok(())
            } else {
                Err(CliError::OracleDisagreement)
            }
        }
    }
}
