//! Brute-force verification by dense sampling.
//!
//! The hyperboloid sheet has a global chart `(theta, t)`, so the sphere's
//! signed implicit function restricted to the surface becomes a scalar
//! field on a rectangle that is periodic in `theta`. Contact shows up as a
//! sign change of that field, and the number of intersection curves equals
//! the number of connected components of the sign-change cell set. This is
//! deliberately independent of the root-based classifier: the only shared
//! ingredient is the surface equation itself.

use crate::geom::{classify_point, PointClass, Sphere, StdHyperboloid};
use thiserror::Error;

/// Sampling resolution and chart extent for [`sample_surface`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_t: usize,
    /// Half-extent of the `t` range; `None` picks the padded automatic
    /// bound that places the whole sphere strictly inside the chart.
    pub t_max: Option<f64>,
}

impl GridSpec {
    /// Grid with the automatic `t` extent. Panics below the 8x8 floor,
    /// which is a caller contract violation rather than a data error.
    pub fn new(n_theta: usize, n_t: usize) -> Self {
        assert!(n_theta >= 8 && n_t >= 8, "grid must be at least 8x8");
        Self {
            n_theta,
            n_t,
            t_max: None,
        }
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = Some(t_max);
        self
    }
}

/// Sampled values of the sphere's signed function over the surface chart.
#[derive(Debug, Clone)]
pub struct SampleGrid {
    pub n_theta: usize,
    pub n_t: usize,
    pub t_max: f64,
    /// Row-major `n_t` rows by `n_theta` columns.
    pub values: Vec<f64>,
}

impl SampleGrid {
    #[inline]
    fn at(&self, it: usize, jt: usize) -> f64 {
        self.values[it * self.n_theta + jt]
    }
}

/// `t` bound guaranteeing the sphere sits strictly inside `|z| < c sinh(t_max)`.
pub fn auto_t_max(h: &StdHyperboloid, s: &Sphere) -> f64 {
    ((s.z_c().abs() + s.r()) / h.c()).asinh() + 1.0
}

/// Evaluates `|P(theta, t) - center|^2 - r^2` on the grid.
///
/// The chart point splits as `(A cos theta, A sin theta, C)` with
/// `A = a cosh t`, `C = c sinh t`, so each node costs one fused multiply
/// after per-row/per-column precomputation.
pub fn sample_surface(h: &StdHyperboloid, s: &Sphere, spec: &GridSpec) -> SampleGrid {
    assert!(
        spec.n_theta >= 8 && spec.n_t >= 8,
        "grid must be at least 8x8"
    );
    let t_max = spec.t_max.unwrap_or_else(|| auto_t_max(h, s));
    let (xc, yc, zc) = (s.center().x, s.center().y, s.center().z);
    let center_sq = xc * xc + yc * yc + zc * zc;
    let r2 = s.r() * s.r();

    // column terms: w_j = xc cos(theta_j) + yc sin(theta_j)
    let mut w = Vec::with_capacity(spec.n_theta);
    for j in 0..spec.n_theta {
        let theta = std::f64::consts::TAU * (j as f64) / (spec.n_theta as f64);
        w.push(xc * theta.cos() + yc * theta.sin());
    }

    let mut values = Vec::with_capacity(spec.n_theta * spec.n_t);
    for i in 0..spec.n_t {
        let t = -t_max + 2.0 * t_max * (i as f64) / ((spec.n_t - 1) as f64);
        let amp = h.a() * t.cosh();
        let z = h.c() * t.sinh();
        let row = amp * amp + z * z - 2.0 * z * zc + center_sq - r2;
        let neg_two_amp = -2.0 * amp;
        for wj in &w {
            values.push(row + neg_two_amp * wj);
        }
    }

    SampleGrid {
        n_theta: spec.n_theta,
        n_t: spec.n_t,
        t_max,
        values,
    }
}

/// Oracle contact verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleContact {
    /// All samples strictly outside the sphere.
    NoContactOutside,
    /// All samples strictly inside the sphere. Unreachable with the padded
    /// automatic `t` bound, kept so a bad manual bound cannot masquerade as
    /// a separation verdict.
    NoContactStraddle,
    /// The field changes sign; `components` counts the intersection curves.
    Contact { components: usize },
}

/// The grid cannot certify the verdict: the field approaches zero without
/// crossing it at this resolution (a near-tangent configuration).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("grid is inconclusive near tangency (min |q| = {min_abs_q:.3e})")]
pub struct InconclusiveNearTangent {
    pub min_abs_q: f64,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Decides contact from the sampled field.
///
/// A cell is *crossing* when its four corners carry both signs (zeros count
/// as both). Crossing cells are merged by 4-neighbor adjacency, periodic in
/// `theta`, and the component count is reported. Without any sign change the
/// verdict is a no-contact side, unless some node's magnitude is below the
/// local inter-node variation, which means a crossing could hide between
/// samples.
pub fn oracle_contact(grid: &SampleGrid) -> Result<OracleContact, InconclusiveNearTangent> {
    let (nt, ntheta) = (grid.n_t, grid.n_theta);

    let mut any_pos = false;
    let mut any_neg = false;
    for &v in &grid.values {
        if v > 0.0 {
            any_pos = true;
        } else if v < 0.0 {
            any_neg = true;
        } else {
            any_pos = true;
            any_neg = true;
        }
        if any_pos && any_neg {
            break;
        }
    }

    if !(any_pos && any_neg) {
        // One sign everywhere: certify that no crossing can hide between
        // nodes by comparing each |q| with the variation to its neighbors.
        let mut min_abs = f64::INFINITY;
        for i in 0..nt {
            for j in 0..ntheta {
                let v = grid.at(i, j);
                let mut local = 0.0f64;
                let right = grid.at(i, (j + 1) % ntheta);
                local = local.max((right - v).abs());
                if i + 1 < nt {
                    local = local.max((grid.at(i + 1, j) - v).abs());
                }
                if v.abs() <= local {
                    return Err(InconclusiveNearTangent { min_abs_q: v.abs() });
                }
                min_abs = min_abs.min(v.abs());
            }
        }
        return Ok(if any_pos {
            OracleContact::NoContactOutside
        } else {
            OracleContact::NoContactStraddle
        });
    }

    // sign-change cells, theta-periodic
    let cells_t = nt - 1;
    let cell_index = |i: usize, j: usize| i * ntheta + j;
    let mut crossing = vec![false; cells_t * ntheta];
    for i in 0..cells_t {
        for j in 0..ntheta {
            let jr = (j + 1) % ntheta;
            let corners = [
                grid.at(i, j),
                grid.at(i, jr),
                grid.at(i + 1, j),
                grid.at(i + 1, jr),
            ];
            let has_nonpos = corners.iter().any(|&v| v <= 0.0);
            let has_nonneg = corners.iter().any(|&v| v >= 0.0);
            crossing[cell_index(i, j)] = has_nonpos && has_nonneg;
        }
    }

    let mut uf = UnionFind::new(cells_t * ntheta);
    for i in 0..cells_t {
        for j in 0..ntheta {
            if !crossing[cell_index(i, j)] {
                continue;
            }
            let here = cell_index(i, j) as u32;
            let jr = (j + 1) % ntheta;
            if crossing[cell_index(i, jr)] {
                uf.union(here, cell_index(i, jr) as u32);
            }
            if i + 1 < cells_t && crossing[cell_index(i + 1, j)] {
                uf.union(here, cell_index(i + 1, j) as u32);
            }
        }
    }

    let mut roots = Vec::new();
    for (idx, &c) in crossing.iter().enumerate() {
        if c {
            let r = uf.find(idx as u32);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }

    Ok(OracleContact::Contact {
        components: roots.len(),
    })
}

/// Oracle side verdict for a contact-free pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSide {
    Interior,
    Exterior,
    /// Sample points fall on both sides: the no-contact premise is wrong.
    Mixed,
}

/// Classifies `n` Fibonacci-lattice points of the sphere's surface against
/// the hyperboloid. Caller contract: the pair is known to be contact-free.
pub fn oracle_side(h: &StdHyperboloid, s: &Sphere, n: usize) -> OracleSide {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut interior = 0usize;
    let mut exterior = 0usize;
    for k in 0..n {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / (n as f64);
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let phi = golden_angle * k as f64;
        let p = s.center() + s.r() * nalgebra::Vector3::new(rho * phi.cos(), rho * phi.sin(), z);
        match classify_point(h, &p) {
            PointClass::Interior => interior += 1,
            PointClass::Exterior => exterior += 1,
            PointClass::OnSurface => return OracleSide::Mixed,
        }
    }
    match (interior, exterior) {
        (_, 0) => OracleSide::Interior,
        (0, _) => OracleSide::Exterior,
        _ => OracleSide::Mixed,
    }
}
