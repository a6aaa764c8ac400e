//! Report types shared by the text and machine outputs.
//!
//! Every subcommand builds a typed report; `--json` serializes it as-is,
//! so machine output mirrors every field and re-serializing a parsed
//! report is byte-identical. Text mode renders the same data with
//! 6-significant-digit numbers.

use relpos_core::charpoly::{CubicRoots, RootSet};
use relpos_core::classify::{ContactStatus, FastVerdict, Regime, Side, TangentLocus};
use relpos_core::geom::{Sphere, StdHyperboloid};
use relpos_core::oracle::{OracleContact, OracleSide};
use relpos_core::sweep::SweepReport;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Formats with `sig` significant digits, fixed-point.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.1}");
    }
    let exp = x.abs().log10().floor() as i32;
    let prec = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{x:.prec$}")
}

fn fmt6(x: f64) -> String {
    fmt_sig(x, 6)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HyperboloidJson {
    pub a: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SphereJson {
    pub center: [f64; 3],
    pub r: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RegimeJson {
    pub class: String,
    pub wide_sphere: bool,
    pub flat_throat: bool,
    pub throat_curvature: f64,
    pub sphere_curvature: f64,
}

impl From<&Regime> for RegimeJson {
    fn from(r: &Regime) -> Self {
        Self {
            class: r.class().to_string(),
            wide_sphere: r.wide_sphere,
            flat_throat: r.flat_throat,
            throat_curvature: r.throat_curvature,
            sphere_curvature: r.sphere_curvature,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LandmarksJson {
    pub neg_a2: f64,
    pub c2: f64,
    pub ar: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RootEntry {
    pub value: f64,
    pub multiplicity: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootsJson {
    /// All four roots of the quartic, merged and sorted.
    Real { values: Vec<RootEntry> },
    /// Two real roots plus the conjugate pair `re +- i*im`.
    Complex {
        fixed: f64,
        real: f64,
        re: f64,
        im: f64,
    },
}

impl RootsJson {
    pub fn from_root_set(rs: &RootSet) -> Self {
        match &rs.cubic {
            CubicRoots::Real(_) => RootsJson::Real {
                values: rs
                    .merged()
                    .expect("real cubic always merges")
                    .into_iter()
                    .map(|(value, multiplicity)| RootEntry {
                        value,
                        multiplicity,
                    })
                    .collect(),
            },
            CubicRoots::Complex { real, re, im } => RootsJson::Complex {
                fixed: rs.fixed_root,
                real: *real,
                re: *re,
                im: *im,
            },
        }
    }

    fn render(&self, out: &mut String) {
        match self {
            RootsJson::Real { values } => {
                let items: Vec<String> = values
                    .iter()
                    .map(|e| format!("{} (x{})", fmt6(e.value), e.multiplicity))
                    .collect();
                let _ = writeln!(out, "roots: {}", items.join(", "));
            }
            RootsJson::Complex {
                fixed,
                real,
                re,
                im,
            } => {
                let _ = writeln!(
                    out,
                    "roots: {} (x1), {} (x1), {} +- {}i (pair)",
                    fmt6(*fixed),
                    fmt6(*real),
                    fmt6(*re),
                    fmt6(*im)
                );
            }
        }
    }
}

pub fn hyperboloid_json(h: &StdHyperboloid) -> HyperboloidJson {
    HyperboloidJson { a: h.a(), c: h.c() }
}

pub fn sphere_json(s: &Sphere) -> SphereJson {
    SphereJson {
        center: [s.center().x, s.center().y, s.center().z],
        r: s.r(),
    }
}

pub fn landmarks_json(h: &StdHyperboloid, s: &Sphere) -> LandmarksJson {
    LandmarksJson {
        neg_a2: -h.a2(),
        c2: h.c2(),
        ar: h.a() * s.r(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassifyReport {
    pub hyperboloid: HyperboloidJson,
    pub sphere: SphereJson,
    pub regime: RegimeJson,
    pub landmarks: LandmarksJson,
    pub delta: f64,
    pub roots: RootsJson,
    #[serde(rename = "type")]
    pub position_type: String,
}

impl ClassifyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "hyperboloid: a = {}, c = {}",
            fmt6(self.hyperboloid.a),
            fmt6(self.hyperboloid.c)
        );
        let _ = writeln!(
            out,
            "sphere: center = ({}, {}, {}), r = {}",
            fmt6(self.sphere.center[0]),
            fmt6(self.sphere.center[1]),
            fmt6(self.sphere.center[2]),
            fmt6(self.sphere.r)
        );
        let _ = writeln!(
            out,
            "regime: {} (throat curvature {}, sphere curvature {})",
            self.regime.class,
            fmt6(self.regime.throat_curvature),
            fmt6(self.regime.sphere_curvature)
        );
        let _ = writeln!(
            out,
            "landmarks: -a^2 = {}, c^2 = {}, ar = {}",
            fmt6(self.landmarks.neg_a2),
            fmt6(self.landmarks.c2),
            fmt6(self.landmarks.ar)
        );
        let _ = writeln!(out, "delta: {}", fmt6(self.delta));
        self.roots.render(&mut out);
        let _ = writeln!(out, "type: {}", self.position_type);
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocusJson {
    Circle { z: f64, rho: f64 },
    Point { point: [f64; 3] },
    VerticalPair { rho: f64, z: f64, theta: f64 },
    PointPlusCurve { point: [f64; 3] },
}

impl From<&TangentLocus> for LocusJson {
    fn from(l: &TangentLocus) -> Self {
        match l {
            TangentLocus::Circle { z, rho } => LocusJson::Circle { z: *z, rho: *rho },
            TangentLocus::Point(p) => LocusJson::Point {
                point: [p.x, p.y, p.z],
            },
            TangentLocus::VerticalPair { rho, z, theta } => LocusJson::VerticalPair {
                rho: *rho,
                z: *z,
                theta: *theta,
            },
            TangentLocus::PointPlusCurve(p) => LocusJson::PointPlusCurve {
                point: [p.x, p.y, p.z],
            },
        }
    }
}

impl LocusJson {
    fn render(&self) -> String {
        match self {
            LocusJson::Circle { z, rho } => {
                format!("circle at z = {} with radius {}", fmt6(*z), fmt6(*rho))
            }
            LocusJson::Point { point } => format!(
                "point ({}, {}, {})",
                fmt6(point[0]),
                fmt6(point[1]),
                fmt6(point[2])
            ),
            LocusJson::VerticalPair { rho, z, theta } => format!(
                "two points at rho = {}, z = +-{}, theta = {}",
                fmt6(*rho),
                fmt6(*z),
                fmt6(*theta)
            ),
            LocusJson::PointPlusCurve { point } => format!(
                "point ({}, {}, {}) plus a transversal curve",
                fmt6(point[0]),
                fmt6(point[1]),
                fmt6(point[2])
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContactJson {
    None { side: String },
    Tangent { locus: LocusJson },
    Transversal { components: u8 },
}

impl From<&ContactStatus> for ContactJson {
    fn from(c: &ContactStatus) -> Self {
        match c {
            ContactStatus::NoContact { side } => ContactJson::None {
                side: match side {
                    Side::Interior => "interior".into(),
                    Side::Exterior => "exterior".into(),
                },
            },
            ContactStatus::Tangent { locus } => ContactJson::Tangent {
                locus: locus.into(),
            },
            ContactStatus::Transversal { components } => ContactJson::Transversal {
                components: *components,
            },
        }
    }
}

impl ContactJson {
    pub fn render(&self) -> String {
        match self {
            ContactJson::None { side } => format!("none (sphere {side} to the hyperboloid)"),
            ContactJson::Tangent { locus } => format!("tangent; locus: {}", locus.render()),
            ContactJson::Transversal { components } => {
                format!("transversal intersection with {components} component(s)")
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FastPathJson {
    pub verdict: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ContactReport {
    #[serde(rename = "type")]
    pub position_type: String,
    pub contact: ContactJson,
    /// Present only when the `r < a`, `ar < c^2` regime admits the fast path.
    pub fast_path: Option<FastPathJson>,
}

pub fn fast_verdict_label(v: FastVerdict) -> &'static str {
    match v {
        FastVerdict::NoContact => "no contact",
        FastVerdict::Tangent => "tangent",
        FastVerdict::Contact => "contact",
    }
}

impl ContactReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "type: {}", self.position_type);
        let _ = writeln!(out, "contact: {}", self.contact.render());
        match &self.fast_path {
            Some(fp) => {
                let _ = writeln!(
                    out,
                    "fast path: verdict {}; agrees with classification: {}",
                    fp.verdict,
                    if fp.agrees { "yes" } else { "NO" }
                );
            }
            None => {
                let _ = writeln!(out, "fast path: not applicable (needs r < a and ar < c^2)");
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SegmentJson {
    pub t_start: f64,
    pub t_end: f64,
    #[serde(rename = "type")]
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EventJson {
    pub t: f64,
    pub from: String,
    pub to: String,
    pub width: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepReportJson {
    pub n_steps: usize,
    pub segments: Vec<SegmentJson>,
    pub events: Vec<EventJson>,
}

impl SweepReportJson {
    pub fn from_report(report: &SweepReport, n_steps: usize) -> Self {
        Self {
            n_steps,
            segments: report
                .segments
                .iter()
                .map(|s| SegmentJson {
                    t_start: s.t_start,
                    t_end: s.t_end,
                    kind: s.kind.to_string(),
                })
                .collect(),
            events: report
                .events
                .iter()
                .map(|e| EventJson {
                    t: e.t,
                    from: e.from.to_string(),
                    to: e.to.to_string(),
                    width: e.width,
                })
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sweep over {} steps", self.n_steps);
        let _ = writeln!(out, "segments:");
        for s in &self.segments {
            let _ = writeln!(out, "  [{:.9}, {:.9}] {}", s.t_start, s.t_end, s.kind);
        }
        if self.events.is_empty() {
            let _ = writeln!(out, "events: none");
        } else {
            let _ = writeln!(out, "events:");
            for e in &self.events {
                let _ = writeln!(
                    out,
                    "  t = {:.9}: {} -> {} (width {:.1e})",
                    e.t, e.from, e.to, e.width
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerifyReport {
    #[serde(rename = "type")]
    pub position_type: String,
    pub classifier_contact: ContactJson,
    pub oracle_contact: String,
    pub oracle_components: Option<usize>,
    pub oracle_side: Option<String>,
    pub grid: usize,
    pub agree: bool,
}

pub fn oracle_contact_label(v: &OracleContact) -> String {
    match v {
        OracleContact::NoContactOutside => "no contact (all samples outside the sphere)".into(),
        OracleContact::NoContactStraddle => "no contact (all samples inside the sphere)".into(),
        OracleContact::Contact { components } => {
            format!("contact with {components} component(s)")
        }
    }
}

pub fn oracle_side_label(v: OracleSide) -> &'static str {
    match v {
        OracleSide::Interior => "interior",
        OracleSide::Exterior => "exterior",
        OracleSide::Mixed => "mixed",
    }
}

impl VerifyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "type: {}", self.position_type);
        let _ = writeln!(out, "classifier: {}", self.classifier_contact.render());
        let _ = writeln!(
            out,
            "oracle ({0}x{0} grid): {1}",
            self.grid, self.oracle_contact
        );
        if let Some(side) = &self.oracle_side {
            let _ = writeln!(out, "oracle side: {side}");
        }
        let _ = writeln!(out, "agreement: {}", if self.agree { "yes" } else { "NO" });
        out
    }
}
