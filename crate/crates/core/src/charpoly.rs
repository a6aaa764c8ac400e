//! Characteristic polynomial of the hyperboloid/sphere pencil.
//!
//! The degree-4 polynomial `det(lambda*H + S)` always carries the factor
//! `(a^2 + lambda)`; what remains after dividing it out (and the leading
//! scale) is a monic cubic whose roots, together with the fixed root
//! `-a^2`, drive the whole classification. This module builds both
//! polynomials, solves the cubic in closed form, and assembles the
//! multiplicity-clustered root set.
//!
//! Numerical policy: tangencies are codimension-1, so every equality test
//! on roots runs through an explicit band (see [`Tolerances`]). Landmark
//! configurations (sphere center on the axis, or on the equatorial plane)
//! are detected on the *inputs* and resolved with exact closed forms
//! instead of the general solver, which is ill-conditioned near multiple
//! roots.

use crate::geom::{Sphere, StdHyperboloid};

/// Relative clustering width for merging nearly equal roots.
pub const CLUSTER_EPS: f64 = 1e-7;
/// Relative half-width of the near-zero discriminant band.
pub const DELTA_BAND_EPS: f64 = 1e-10;
/// Relative tolerance for detecting an on-axis / on-plane sphere center.
pub const AXIS_EPS: f64 = 1e-9;
/// Relative tolerance for the exact multiplicity conditions on `r^2`.
pub const COND_EPS: f64 = 1e-9;

/// Tolerance bundle threaded through the solver and the classifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative width for clustering roots into multiplicities.
    pub cluster_rel: f64,
    /// Relative width of the zero band on the cubic discriminant.
    pub delta_band_rel: f64,
    /// Relative tolerance on `rho_c = 0` / `z_c = 0` input tests.
    pub axis_rel: f64,
    /// Relative tolerance on the closed-form multiplicity conditions.
    pub cond_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cluster_rel: CLUSTER_EPS,
            delta_band_rel: DELTA_BAND_EPS,
            axis_rel: AXIS_EPS,
            cond_rel: COND_EPS,
        }
    }
}

impl Tolerances {
    /// Same bundle with a different clustering width (the CLI `--tol` knob).
    pub fn with_cluster(cluster_rel: f64) -> Self {
        Self {
            cluster_rel,
            ..Self::default()
        }
    }
}

/// Monic cubic `lambda^3 + a2*lambda^2 + a1*lambda + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPoly {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl CubicPoly {
    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.a2) * x + self.a1) * x + self.a0
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        (3.0 * x + 2.0 * self.a2) * x + self.a1
    }

    pub fn eval_second_deriv(&self, x: f64) -> f64 {
        6.0 * x + 2.0 * self.a2
    }
}

/// Quartic `c4*lambda^4 + ... + c0`, the full pencil determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticPoly {
    pub c4: f64,
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl QuarticPoly {
    pub fn eval(&self, x: f64) -> f64 {
        (((self.c4 * x + self.c3) * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        ((4.0 * self.c4 * x + 3.0 * self.c3) * x + 2.0 * self.c2) * x + self.c1
    }

    pub fn eval_second_deriv(&self, x: f64) -> f64 {
        (12.0 * self.c4 * x + 6.0 * self.c3) * x + 2.0 * self.c2
    }
}

/// Cardano quantities of a monic cubic: `Q`, `R` and `Delta = Q^3 + R^2`.
///
/// Sign contract: `Delta > 0` means one real root plus a complex pair,
/// `Delta = 0` a multiple real root, `Delta < 0` three distinct reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminant {
    pub q: f64,
    pub r: f64,
    pub delta: f64,
}

impl Discriminant {
    /// Absolute half-width of the zero band, scaled by the magnitudes of
    /// `Q^3` and `R^2` so the test is unit-insensitive.
    pub fn zero_band(&self, tol: &Tolerances) -> f64 {
        tol.delta_band_rel * (1.0 + self.q.abs().powi(3) + self.r * self.r)
    }

    pub fn is_zero(&self, tol: &Tolerances) -> bool {
        self.delta.abs() <= self.zero_band(tol)
    }
}

/// Roots of the residual cubic: either all real with multiplicities, or
/// one real root plus a complex-conjugate pair.
#[derive(Debug, Clone, PartialEq)]
pub enum CubicRoots {
    /// Distinct values sorted ascending; multiplicities sum to 3.
    Real(Vec<(f64, u8)>),
    /// One real root and the pair `re +- i*im`, `im > 0`.
    Complex { real: f64, re: f64, im: f64 },
}

impl CubicRoots {
    pub fn is_complex(&self) -> bool {
        matches!(self, CubicRoots::Complex { .. })
    }

    /// Product of the three roots (the pair contributes `re^2 + im^2`).
    pub fn product(&self) -> f64 {
        match self {
            CubicRoots::Real(roots) => roots.iter().map(|&(v, m)| v.powi(m as i32)).product(),
            CubicRoots::Complex { real, re, im } => real * (re * re + im * im),
        }
    }
}

/// Solved root set of the full quartic: the fixed root `-a^2` plus the
/// clustered cubic roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Always `-a^2`.
    pub fixed_root: f64,
    pub cubic: CubicRoots,
    /// Absolute clustering width that was applied.
    pub cluster_eps: f64,
}

impl RootSet {
    /// Product of all four roots; equals `-a^4 c^2 r^2`.
    pub fn product(&self) -> f64 {
        self.fixed_root * self.cubic.product()
    }

    /// Multiplicity of `-a^2` in the quartic: 1 plus every cubic root that
    /// clusters onto it.
    pub fn fixed_multiplicity(&self) -> u8 {
        match &self.cubic {
            CubicRoots::Real(roots) => {
                1 + roots
                    .iter()
                    .filter(|&&(v, _)| (v - self.fixed_root).abs() <= self.cluster_eps)
                    .map(|&(_, m)| m)
                    .sum::<u8>()
            }
            CubicRoots::Complex { real, .. } => {
                if (real - self.fixed_root).abs() <= self.cluster_eps {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// All four roots merged into one sorted multiplicity list, or `None`
    /// when the cubic carries a complex pair.
    pub fn merged(&self) -> Option<Vec<(f64, u8)>> {
        let CubicRoots::Real(roots) = &self.cubic else {
            return None;
        };
        let mut out: Vec<(f64, u8)> = Vec::with_capacity(4);
        let mut fixed_used = false;
        for &(v, m) in roots {
            if !fixed_used && (v - self.fixed_root).abs() <= self.cluster_eps {
                out.push((self.fixed_root, m + 1));
                fixed_used = true;
            } else {
                out.push((v, m));
            }
        }
        if !fixed_used {
            out.push((self.fixed_root, 1));
        }
        out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        Some(out)
    }
}

/// Coefficients of the residual cubic for the pair `(h, s)`.
pub fn residual_cubic(h: &StdHyperboloid, s: &Sphere) -> CubicPoly {
    let a2 = h.a2();
    let c2 = h.c2();
    let r2 = s.r() * s.r();
    let (xc, yc, zc) = (s.center().x, s.center().y, s.center().z);
    let rho2 = xc * xc + yc * yc;
    let zc2 = zc * zc;
    CubicPoly {
        a2: a2 - c2 + r2 - rho2 - zc2,
        a1: -(a2 * c2 - a2 * r2 + c2 * r2 - c2 * rho2 + a2 * zc2),
        a0: -a2 * c2 * r2,
    }
}

/// Coefficients of the full quartic `(a^2 + lambda) * g(lambda) / (a^4 c^2)`.
pub fn full_quartic(h: &StdHyperboloid, s: &Sphere) -> QuarticPoly {
    let g = residual_cubic(h, s);
    let a2 = h.a2();
    let scale = 1.0 / (a2 * a2 * h.c2());
    QuarticPoly {
        c4: scale,
        c3: (g.a2 + a2) * scale,
        c2: (g.a1 + a2 * g.a2) * scale,
        c1: (g.a0 + a2 * g.a1) * scale,
        c0: a2 * g.a0 * scale,
    }
}

/// Cardano quantities of `cubic`.
///
/// `R` uses the standard `2*a2^3` term; see the module tests for the
/// reference value it must reproduce.
pub fn cardano(cubic: &CubicPoly) -> Discriminant {
    let (a2, a1, a0) = (cubic.a2, cubic.a1, cubic.a0);
    let q = (3.0 * a1 - a2 * a2) / 9.0;
    let r = (9.0 * a2 * a1 - 27.0 * a0 - 2.0 * a2 * a2 * a2) / 54.0;
    Discriminant {
        q,
        r,
        delta: q * q * q + r * r,
    }
}

fn newton_polish<F, D>(f: F, df: D, mut x: f64, steps: usize) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    for _ in 0..steps {
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let step = f(x) / d;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

fn cluster_eps_abs(values: &[f64], tol: &Tolerances) -> f64 {
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    tol.cluster_rel * (1.0 + max_abs)
}

/// Merges a sorted slice of root values into `(value, multiplicity)` pairs
/// using the absolute width `eps`. Merged clusters take their mean value.
fn cluster_sorted(values: &[f64], eps: f64) -> Vec<(f64, u8)> {
    let mut out: Vec<(f64, u8)> = Vec::with_capacity(values.len());
    for &v in values {
        match out.last_mut() {
            Some((last, m)) if (v - *last).abs() <= eps => {
                // running mean keeps the cluster centered
                *last = (*last * (*m as f64) + v) / (*m as f64 + 1.0);
                *m += 1;
            }
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Solves the monic cubic with the default tolerances.
pub fn solve_cubic(cubic: &CubicPoly) -> CubicRoots {
    solve_cubic_with(cubic, &Tolerances::default())
}

/// Closed-form cubic solver.
///
/// Route selection follows the discriminant: the trigonometric branch for
/// three distinct reals, radicals for one real plus a conjugate pair, and a
/// dedicated multiple-root branch inside the zero band. Every returned real
/// is polished with two derivative-based refinement steps (simple roots on
/// the cubic, double roots on its derivative).
pub fn solve_cubic_with(cubic: &CubicPoly, tol: &Tolerances) -> CubicRoots {
    let disc = cardano(cubic);
    let shift = cubic.a2 / 3.0;

    if disc.is_zero(tol) {
        // Multiple real root: candidate single/double from the radical
        // formula collapse, promoted to a triple when the two coincide.
        let s = disc.r.cbrt();
        let mut single = 2.0 * s - shift;
        let mut double = -s - shift;
        let eps = cluster_eps_abs(&[single, double], tol);
        if (single - double).abs() <= eps {
            let triple = -shift;
            return CubicRoots::Real(vec![(triple, 3)]);
        }
        single = newton_polish(|x| cubic.eval(x), |x| cubic.eval_deriv(x), single, 2);
        // the double root is a simple root of the derivative
        double = newton_polish(
            |x| cubic.eval_deriv(x),
            |x| cubic.eval_second_deriv(x),
            double,
            2,
        );
        // Pin the double so the three roots satisfy the exact product
        // relation single * double^2 = -a0. A genuine double is unmoved;
        // a band-merged near-pair lands on its geometric mean instead of
        // the midpoint, which keeps the product identity exact.
        let target = -cubic.a0 / single;
        if target > 0.0 && target.is_finite() {
            double = target.sqrt().copysign(double);
        }
        let mut roots = vec![(single, 1u8), (double, 2u8)];
        roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        return CubicRoots::Real(roots);
    }

    if disc.delta > 0.0 {
        // One real root, one conjugate pair. Pick the larger-magnitude cube
        // root first and recover the other through S*T = -Q to avoid
        // cancellation.
        let sq = disc.delta.sqrt();
        let (s, t) = if disc.r >= 0.0 {
            let s = (disc.r + sq).cbrt();
            let t = if s != 0.0 {
                -disc.q / s
            } else {
                (disc.r - sq).cbrt()
            };
            (s, t)
        } else {
            let t = (disc.r - sq).cbrt();
            let s = if t != 0.0 {
                -disc.q / t
            } else {
                (disc.r + sq).cbrt()
            };
            (s, t)
        };
        let mut real = s + t - shift;
        real = newton_polish(|x| cubic.eval(x), |x| cubic.eval_deriv(x), real, 2);
        let re = -0.5 * (s + t) - shift;
        let im = (3.0f64.sqrt() / 2.0) * (s - t).abs();
        let eps = cluster_eps_abs(&[real, re, im], tol);
        if im <= eps {
            // flatten a razor-thin pair to a real double root
            let mut roots = vec![(real, 1u8), (re, 2u8)];
            roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            return CubicRoots::Real(roots);
        }
        return CubicRoots::Complex { real, re, im };
    }

    // Three distinct reals via the trigonometric form.
    let neg_q = -disc.q;
    let phi = (disc.r / neg_q.powf(1.5)).clamp(-1.0, 1.0).acos();
    let amp = 2.0 * neg_q.sqrt();
    let mut vals = [0.0f64; 3];
    for (k, v) in vals.iter_mut().enumerate() {
        let angle = (phi + std::f64::consts::TAU * k as f64) / 3.0;
        let raw = amp * angle.cos() - shift;
        *v = newton_polish(|x| cubic.eval(x), |x| cubic.eval_deriv(x), raw, 2);
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let eps = cluster_eps_abs(&vals, tol);
    CubicRoots::Real(cluster_sorted(&vals, eps))
}

/// Stable roots of a monic quadratic `x^2 + b*x + c` known to have real
/// roots; returns them sorted ascending.
fn quadratic_roots_sorted(b: f64, c: f64, disc: f64) -> (f64, f64) {
    let sq = disc.max(0.0).sqrt();
    let q = -0.5 * (b + sq.copysign(b));
    let (r1, r2) = if q != 0.0 {
        (q, c / q)
    } else {
        (-b / 2.0, -b / 2.0)
    };
    if r1 <= r2 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

/// Full solved root set for the pair, with default tolerances.
pub fn root_set(h: &StdHyperboloid, s: &Sphere) -> RootSet {
    root_set_with(h, s, &Tolerances::default())
}

/// Full solved root set for the pair.
///
/// When the sphere center lies on the OZ axis, or on the equatorial plane,
/// the cubic factors exactly and the roots come from closed forms (with the
/// known multiple-root conditions snapped when they hold). Off those loci
/// the general solver runs; its roots are simple there and already at
/// machine accuracy after polishing.
pub fn root_set_with(h: &StdHyperboloid, s: &Sphere, tol: &Tolerances) -> RootSet {
    let a2 = h.a2();
    let c2 = h.c2();
    let r = s.r();
    let r2 = r * r;
    let rho = s.rho_c();
    let zc = s.z_c();

    let on_axis = rho <= tol.axis_rel * (h.a() + r + zc.abs());
    let on_plane = zc.abs() <= tol.axis_rel * (h.a() + r + rho);

    let cubic_roots: CubicRoots = if on_axis {
        // Residual cubic factors as (lambda + a^2) * quadratic; the
        // quadratic always has one positive and one negative root.
        let b = c2 - r2 + zc * zc;
        let sq = (b * b + 4.0 * c2 * r2).sqrt();
        let lam_pos = 0.5 * (b + sq);
        let mut lam_neg = -(c2 * r2) / lam_pos;
        // triple root at -a^2 exactly when r^2 = a^2 (1 + z_c^2/(a^2+c^2))
        let r2_triple = a2 * (1.0 + zc * zc / (a2 + c2));
        if (r2 - r2_triple).abs() <= tol.cond_rel * (r2 + r2_triple) {
            lam_neg = -a2;
        }
        let mut vals = [-a2, lam_neg, lam_pos];
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let eps = cluster_eps_abs(&vals, tol);
        CubicRoots::Real(cluster_sorted(&vals, eps))
    } else if on_plane {
        // c^2 is a root; the cofactor is lambda^2 + b*lambda + a^2 r^2.
        let b = a2 + r2 - rho * rho;
        let ar2 = a2 * r2;
        let disc = b * b - 4.0 * ar2;
        let band = tol.delta_band_rel * (b * b + 4.0 * ar2 + 1.0);
        if disc < -band {
            let im = 0.5 * (-disc).sqrt();
            let re = -0.5 * b;
            let eps = cluster_eps_abs(&[c2, re, im], tol);
            if im <= eps {
                // flatten a razor-thin pair to a real double root
                let mut vals = [c2, re, re];
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                CubicRoots::Real(cluster_sorted(&vals, eps))
            } else {
                CubicRoots::Complex { real: c2, re, im }
            }
        } else if disc.abs() <= band {
            // double root of the cofactor; equals +-a*r at the two
            // tangent radii rho_c = a + r and |a - r|
            let mu = -0.5 * b;
            let mut vals = [c2, mu, mu];
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let eps = cluster_eps_abs(&vals, tol);
            CubicRoots::Real(cluster_sorted(&vals, eps))
        } else {
            let (mut m1, mut m2) = quadratic_roots_sorted(b, ar2, disc);
            // multiple root at c^2 exactly when r^2 = -c^2 + c^2 rho^2/(a^2+c^2)
            let r2_dbl = -c2 + c2 * rho * rho / (a2 + c2);
            if r2_dbl > 0.0 && (r2 - r2_dbl).abs() <= tol.cond_rel * (r2 + r2_dbl) {
                if (m1 - c2).abs() <= (m2 - c2).abs() {
                    m1 = c2;
                } else {
                    m2 = c2;
                }
            }
            let mut vals = [c2, m1, m2];
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let eps = cluster_eps_abs(&vals, tol);
            CubicRoots::Real(cluster_sorted(&vals, eps))
        }
    } else {
        // Off the landmark loci every cubic root is simple. The quartic's
        // near-double at -a^2 is a property of the extra fixed factor, not
        // of the cubic root, so no special treatment is needed here.
        solve_cubic_with(&residual_cubic(h, s), tol)
    };

    let mut max_abs = a2;
    match &cubic_roots {
        CubicRoots::Real(list) => {
            for &(v, _) in list {
                max_abs = max_abs.max(v.abs());
            }
        }
        CubicRoots::Complex { real, re, im } => {
            max_abs = max_abs.max(real.abs()).max(re.hypot(*im));
        }
    }

    RootSet {
        fixed_root: -a2,
        cubic: cubic_roots,
        cluster_eps: tol.cluster_rel * (1.0 + max_abs),
    }
}
