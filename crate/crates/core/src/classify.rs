//! Relative-position classification from the root configuration.
//!
//! Thirteen mutually exclusive verdicts cover every valid pair. Five of
//! them exist for any geometry; three more open up when the sphere is at
//! least as wide as the throat (`a <= r`), four when the sphere is flatter
//! than the throat hyperbola (`c^2 < ar`), and one sits on the measure-zero
//! curvature-matching boundary `c^2 = ar`. The matcher reads the clustered
//! root set against the landmark values `-a^2`, `c^2` and `ar`, with the
//! tangency bands winning over strict-inequality patterns: a near-tangent
//! input reports the tangent type, never a transversal one.

use crate::charpoly::{self, cardano, residual_cubic, CubicRoots, RootSet, Tolerances};
use crate::geom::{Sphere, StdHyperboloid};
use nalgebra::Vector3;
use thiserror::Error;

/// Relative-position verdict. Short names follow the classification tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionType {
    /// Sphere interior, no contact.
    I,
    /// Sphere exterior, no contact.
    E,
    /// Tangent, center interior.
    TI,
    /// Tangent, center exterior.
    TE,
    /// Non-tangent contact, one intersection curve.
    C,
    /// Tangent along a circle around the axis.
    TIc,
    /// Tangent point plus extra transversal contact (wide sphere).
    Td,
    /// Two transversal curves, wide sphere.
    Ca,
    /// Tangent at two points of one vertical ray.
    TEs,
    /// Tangent at one equatorial point plus extra transversal contact.
    TEs1,
    /// Tangent point plus extra transversal contact (flat throat).
    TEs2,
    /// Two transversal curves, flat throat.
    Cm,
    /// Single equatorial tangent point on the curvature boundary `c^2 = ar`.
    TEPointBoundary,
}

impl PositionType {
    pub fn is_tangent(&self) -> bool {
        use PositionType::*;
        matches!(
            self,
            TI | TE | TIc | TEs | TEs1 | TEs2 | Td | TEPointBoundary
        )
    }

    pub fn label(&self) -> &'static str {
        use PositionType::*;
        match self {
            I => "I",
            E => "E",
            TI => "TI",
            TE => "TE",
            C => "C",
            TIc => "TIc",
            Td => "Td",
            Ca => "Ca",
            TEs => "TEs",
            TEs1 => "TEs1",
            TEs2 => "TEs2",
            Cm => "Cm",
            TEPointBoundary => "TEpointBoundary",
        }
    }
}

impl std::fmt::Display for PositionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which side of the surface a contact-free sphere occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Where a tangent verdict touches the surface.
#[derive(Debug, Clone, PartialEq)]
pub enum TangentLocus {
    /// Full circle of tangency at height `z` with radius `rho`.
    Circle { z: f64, rho: f64 },
    /// Single tangent point.
    Point(Vector3<f64>),
    /// Two tangent points `(rho, theta, +-z)` on one vertical ray.
    VerticalPair { rho: f64, z: f64, theta: f64 },
    /// Tangent point accompanied by a separate transversal curve.
    PointPlusCurve(Vector3<f64>),
}

impl TangentLocus {
    /// Every tangent point carried by the locus, in Cartesian coordinates.
    pub fn points(&self) -> Vec<Vector3<f64>> {
        match self {
            TangentLocus::Circle { .. } => Vec::new(),
            TangentLocus::Point(p) | TangentLocus::PointPlusCurve(p) => vec![*p],
            TangentLocus::VerticalPair { rho, z, theta } => vec![
                Vector3::new(rho * theta.cos(), rho * theta.sin(), *z),
                Vector3::new(rho * theta.cos(), rho * theta.sin(), -*z),
            ],
        }
    }
}

/// Contact verdict derived from the position type.
#[derive(Debug, Clone, PartialEq)]
pub enum ContactStatus {
    NoContact { side: Side },
    Tangent { locus: TangentLocus },
    Transversal { components: u8 },
}

/// Size/curvature guards that gate the extra classification tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    /// `a <= r`: the sphere cannot travel the interior without touching.
    pub wide_sphere: bool,
    /// `c^2 < ar`: the sphere is flatter than the throat hyperbola.
    pub flat_throat: bool,
    /// Maximum curvature of the vertical hyperbola, `a / c^2`.
    pub throat_curvature: f64,
    /// Curvature of a great circle of the sphere, `1 / r`.
    pub sphere_curvature: f64,
}

/// The four regime classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeClass {
    Standard,
    WideSphere,
    FlatThroat,
    Both,
}

impl Regime {
    pub fn class(&self) -> RegimeClass {
        match (self.wide_sphere, self.flat_throat) {
            (false, false) => RegimeClass::Standard,
            (true, false) => RegimeClass::WideSphere,
            (false, true) => RegimeClass::FlatThroat,
            (true, true) => RegimeClass::Both,
        }
    }
}

impl std::fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegimeClass::Standard => "standard",
            RegimeClass::WideSphere => "wide-sphere",
            RegimeClass::FlatThroat => "flat-throat",
            RegimeClass::Both => "wide-sphere+flat-throat",
        };
        f.write_str(s)
    }
}

/// Computes the regime guards and the curvature pair behind them.
pub fn regime(h: &StdHyperboloid, s: &Sphere) -> Regime {
    Regime {
        wide_sphere: h.a() <= s.r(),
        flat_throat: h.c2() < h.a() * s.r(),
        throat_curvature: h.a() / h.c2(),
        sphere_curvature: 1.0 / s.r(),
    }
}

/// Classification failure: the roots fit no table row within tolerance.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("root configuration matches no relative-position pattern: {details}")]
pub struct UnclassifiableRoots {
    pub details: String,
}

fn unclassifiable(rs: &RootSet, why: &str) -> UnclassifiableRoots {
    UnclassifiableRoots {
        details: format!("{why}; fixed root {}, cubic {:?}", rs.fixed_root, rs.cubic),
    }
}

/// Classifies with the default tolerances.
pub fn classify(h: &StdHyperboloid, s: &Sphere) -> Result<PositionType, UnclassifiableRoots> {
    classify_with(h, s, &Tolerances::default())
}

/// Classifies the pair by matching its root set against the tables.
pub fn classify_with(
    h: &StdHyperboloid,
    s: &Sphere,
    tol: &Tolerances,
) -> Result<PositionType, UnclassifiableRoots> {
    let rs = charpoly::root_set_with(h, s, tol);
    match classify_root_set(&rs, h, s) {
        Ok(kind) => Ok(kind),
        Err(err) => {
            // The discriminant zero band can squash a close-but-simple root
            // pair into a double that fits no table row (it happens near
            // the steep-regime radius where c^2 momentarily doubles without
            // tangency). Re-resolve with the band effectively disabled; a
            // genuine multiple root is unaffected because it never errors
            // on the first pass.
            let tight = Tolerances {
                delta_band_rel: tol.delta_band_rel * 1e-8,
                ..*tol
            };
            let rs2 = charpoly::root_set_with(h, s, &tight);
            if rs2 != rs {
                classify_root_set(&rs2, h, s).map_err(|_| err)
            } else {
                Err(err)
            }
        }
    }
}

/// The matcher proper, reusable when the root set is already in hand.
pub fn classify_root_set(
    rs: &RootSet,
    h: &StdHyperboloid,
    s: &Sphere,
) -> Result<PositionType, UnclassifiableRoots> {
    let band = rs.cluster_eps;
    let neg_a2 = -h.a2();
    let c2 = h.c2();
    let ar = h.a() * s.r();
    let flat_throat = c2 < ar;

    let list = match &rs.cubic {
        CubicRoots::Complex { .. } => return Ok(PositionType::C),
        CubicRoots::Real(list) => list,
    };

    let near = |v: f64, target: f64| (v - target).abs() <= band;

    // Triple cubic root: only the curvature-matching boundary produces one.
    if let Some(&(t, _)) = list.iter().find(|&&(_, m)| m == 3) {
        return if near(t, c2) {
            Ok(PositionType::TEPointBoundary)
        } else {
            Err(unclassifiable(rs, "triple cubic root away from c^2"))
        };
    }

    // Double cubic root: some tangency.
    if let Some(&(d, _)) = list.iter().find(|&&(_, m)| m == 2) {
        let single = list
            .iter()
            .find(|&&(_, m)| m == 1)
            .map(|&(v, _)| v)
            .ok_or_else(|| unclassifiable(rs, "double root without companion"))?;
        if near(d, neg_a2) {
            return Ok(PositionType::TIc);
        }
        if d < neg_a2 {
            return Ok(PositionType::Td);
        }
        if d < 0.0 {
            return Ok(PositionType::TI);
        }
        // positive double root
        if near(d, c2) {
            return if single > d {
                Ok(PositionType::TEs)
            } else if !flat_throat {
                // In the steep regime c^2 can still turn into a double root
                // (center on the equatorial plane at the radius solving the
                // multiplicity condition), but both candidate tangency
                // heights are imaginary there: the sphere is exterior with
                // no contact, the limit of E configurations on either side.
                Ok(PositionType::E)
            } else {
                Err(unclassifiable(
                    rs,
                    "double root at c^2 below the third root",
                ))
            };
        }
        if near(single, c2) && near(d, ar) && flat_throat {
            return Ok(PositionType::TEs1);
        }
        if d < c2 {
            return if single > d {
                Ok(PositionType::TE)
            } else {
                Err(unclassifiable(
                    rs,
                    "positive double root above its companion",
                ))
            };
        }
        // d > c2 beyond the band
        return if flat_throat && single > d {
            Ok(PositionType::TEs2)
        } else {
            Err(unclassifiable(
                rs,
                "double root above c^2 outside the flat-throat regime",
            ))
        };
    }

    // Three distinct real roots.
    let vals: Vec<f64> = list.iter().map(|&(v, _)| v).collect();
    if vals.len() != 3 {
        return Err(unclassifiable(rs, "unexpected multiplicity structure"));
    }
    let (l2, l3, l4) = (vals[0], vals[1], vals[2]);

    if l3 < 0.0 {
        // two negative, one positive
        if near(l2, neg_a2) && near(l3, neg_a2) {
            // both hug -a^2 without having merged: tangency band wins
            return Ok(PositionType::TIc);
        }
        if l2 >= neg_a2 - band {
            return Ok(PositionType::I);
        }
        if l3 <= neg_a2 + band {
            return Ok(PositionType::Ca);
        }
        return Err(unclassifiable(rs, "negative roots straddle -a^2"));
    }

    if l2 > 0.0 {
        // three positive
        if near(l2, c2) && near(l3, c2) {
            return Ok(PositionType::TEs);
        }
        let fits_e = l3 <= c2 + band && l4 >= c2 - band;
        let fits_cm = flat_throat && l2 >= c2 - band;
        match (fits_e, fits_cm) {
            (true, false) => return Ok(PositionType::E),
            (false, true) => return Ok(PositionType::Cm),
            (true, true) => {
                // only reachable hugging c^2 from both sides; pick the
                // nearer landmark coincidence
                return if (l3 - c2).abs() <= (l2 - c2).abs() {
                    Ok(PositionType::E)
                } else {
                    Ok(PositionType::Cm)
                };
            }
            (false, false) => {
                return Err(unclassifiable(rs, "positive roots fit neither E nor Cm"))
            }
        }
    }

    Err(unclassifiable(rs, "mixed-sign root triple"))
}

/// Derives the contact verdict (and tangent locus) from the classification.
pub fn contact_status(
    h: &StdHyperboloid,
    s: &Sphere,
) -> Result<ContactStatus, UnclassifiableRoots> {
    contact_status_with(h, s, &Tolerances::default())
}

pub fn contact_status_with(
    h: &StdHyperboloid,
    s: &Sphere,
    tol: &Tolerances,
) -> Result<ContactStatus, UnclassifiableRoots> {
    let kind = classify_with(h, s, tol)?;
    Ok(contact_status_of(h, s, kind, tol))
}

/// Maps an already-computed verdict to its contact status.
pub fn contact_status_of(
    h: &StdHyperboloid,
    s: &Sphere,
    kind: PositionType,
    tol: &Tolerances,
) -> ContactStatus {
    use PositionType::*;
    match kind {
        I => ContactStatus::NoContact {
            side: Side::Interior,
        },
        E => ContactStatus::NoContact {
            side: Side::Exterior,
        },
        C => ContactStatus::Transversal { components: 1 },
        Ca | Cm => ContactStatus::Transversal { components: 2 },
        tangent => {
            let locus = tangent_locus_with(h, s, tangent, tol)
                .expect("tangent verdicts always carry a locus");
            ContactStatus::Tangent { locus }
        }
    }
}

/// Fast-path verdict from the discriminant sign alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastVerdict {
    NoContact,
    Tangent,
    Contact,
}

/// The fast path is only sound for `r < a` and `ar < c^2`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("fast contact test requires r < a and ar < c^2 (got a = {a}, c = {c}, r = {r})")]
pub struct RegimeViolation {
    pub a: f64,
    pub c: f64,
    pub r: f64,
}

/// Contact detection straight from the sign of the cubic discriminant,
/// valid only in the `r < a`, `ar < c^2` regime.
pub fn fast_contact(h: &StdHyperboloid, s: &Sphere) -> Result<FastVerdict, RegimeViolation> {
    fast_contact_with(h, s, &Tolerances::default())
}

pub fn fast_contact_with(
    h: &StdHyperboloid,
    s: &Sphere,
    tol: &Tolerances,
) -> Result<FastVerdict, RegimeViolation> {
    if s.r() >= h.a() || h.a() * s.r() >= h.c2() {
        return Err(RegimeViolation {
            a: h.a(),
            c: h.c(),
            r: s.r(),
        });
    }
    let disc = cardano(&residual_cubic(h, s));
    let band = disc.zero_band(tol);
    Ok(if disc.delta > band {
        FastVerdict::Contact
    } else if disc.delta < -band {
        FastVerdict::NoContact
    } else {
        FastVerdict::Tangent
    })
}

/// Errors from [`tangent_locus`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocusError {
    #[error("{0} is not a tangent position type")]
    NotTangent(PositionType),
    #[error("tangency system is numerically degenerate")]
    Degenerate,
}

/// Tangent locus for a tangent verdict, with default tolerances.
pub fn tangent_locus(
    h: &StdHyperboloid,
    s: &Sphere,
    kind: PositionType,
) -> Result<TangentLocus, LocusError> {
    tangent_locus_with(h, s, kind, &Tolerances::default())
}

/// Tangent locus for a tangent verdict.
///
/// Landmark tangencies come in closed form; the generic double-root cases
/// recover the point as the null vector of the pencil matrix at the double
/// root, dehomogenized.
pub fn tangent_locus_with(
    h: &StdHyperboloid,
    s: &Sphere,
    kind: PositionType,
    tol: &Tolerances,
) -> Result<TangentLocus, LocusError> {
    use PositionType::*;
    let a2 = h.a2();
    let c2 = h.c2();
    let sum = a2 + c2;
    match kind {
        TIc => {
            // unique z of the tangency circle, then rho off the surface
            let z = c2 * s.z_c() / sum;
            let rho = h.a() * (1.0 + z * z / c2).sqrt();
            Ok(TangentLocus::Circle { z, rho })
        }
        TEs => {
            let rho_c = s.rho_c();
            let rho = a2 * rho_c / sum;
            let mut z2 = c2 * (a2 * rho_c * rho_c / (sum * sum) - 1.0);
            if z2 < 0.0 {
                // right on the curvature boundary the pair collapses to z = 0;
                // only a genuinely negative value is a caller error
                if z2 > -1e-9 * (1.0 + c2) {
                    z2 = 0.0;
                } else {
                    return Err(LocusError::Degenerate);
                }
            }
            Ok(TangentLocus::VerticalPair {
                rho,
                z: z2.sqrt(),
                theta: s.theta_c(),
            })
        }
        TEs1 => {
            let theta = s.theta_c();
            Ok(TangentLocus::PointPlusCurve(Vector3::new(
                h.a() * theta.cos(),
                h.a() * theta.sin(),
                0.0,
            )))
        }
        TEPointBoundary => {
            let rho = a2 * s.rho_c() / sum;
            let theta = s.theta_c();
            Ok(TangentLocus::Point(Vector3::new(
                rho * theta.cos(),
                rho * theta.sin(),
                0.0,
            )))
        }
        TI | TE | Td | TEs2 => {
            let rs = charpoly::root_set_with(h, s, tol);
            let CubicRoots::Real(list) = &rs.cubic else {
                return Err(LocusError::Degenerate);
            };
            let double = list
                .iter()
                .find(|&&(_, m)| m >= 2)
                .map(|&(v, _)| v)
                .ok_or(LocusError::Degenerate)?;
            let point = pencil_null_point(h, s, double).ok_or(LocusError::Degenerate)?;
            let locus = match kind {
                TI | TE => TangentLocus::Point(point),
                _ => TangentLocus::PointPlusCurve(point),
            };
            Ok(locus)
        }
        other => Err(LocusError::NotTangent(other)),
    }
}

/// Null vector of `lambda*H + S`, dehomogenized to an affine point.
fn pencil_null_point(h: &StdHyperboloid, s: &Sphere, lambda: f64) -> Option<Vector3<f64>> {
    let m = h.matrix().to_matrix() * lambda + s.matrix().to_matrix();
    let svd = m.svd(false, true);
    let v_t = svd.v_t?;
    let mut best = 0;
    for i in 1..4 {
        if svd.singular_values[i] < svd.singular_values[best] {
            best = i;
        }
    }
    let v = v_t.row(best).transpose();
    if v[3].abs() <= 1e-12 * v.norm() {
        return None;
    }
    Some(Vector3::new(v[0] / v[3], v[1] / v[3], v[2] / v[3]))
}
