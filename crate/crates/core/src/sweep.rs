//! Moving-sphere analysis along a center path.
//!
//! The sphere keeps its radius and translates its center along a continuous
//! path; the classification can only change through a configuration with a
//! multiple root, so every transition is bracketed by bisection. Tangency
//! transitions flip the sign of the cubic discriminant; landmark crossings
//! (a root passing `-a^2` or `c^2`) keep the discriminant negative on both
//! sides and are bracketed on the signed root-landmark gap instead. Events
//! narrower than the sampling step can be missed: the report is exact only
//! down to the chosen resolution.

use crate::charpoly::{self, cardano, residual_cubic, CubicRoots, Tolerances};
use crate::classify::{classify_root_set, PositionType};
use crate::geom::{Sphere, StdHyperboloid};
use nalgebra::Vector3;
use std::sync::Arc;
use thiserror::Error;

/// Bracketing width, in path parameter, down to which events are refined.
pub const EVENT_WIDTH: f64 = 1e-10;

/// Continuous center path over `t in [0, 1]`.
#[derive(Clone)]
pub enum CenterPath {
    /// Piecewise-linear through the waypoints, uniformly parameterized by
    /// segment index.
    Waypoints(Vec<Vector3<f64>>),
    /// Arbitrary parametric description.
    Parametric(Arc<dyn Fn(f64) -> Vector3<f64> + Send + Sync>),
}

impl std::fmt::Debug for CenterPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CenterPath::Waypoints(w) => f.debug_tuple("Waypoints").field(w).finish(),
            CenterPath::Parametric(_) => f.write_str("Parametric(..)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("a waypoint path needs at least 2 points, got {0}")]
    TooFewWaypoints(usize),
}

impl CenterPath {
    pub fn waypoints(points: Vec<Vector3<f64>>) -> Result<Self, PathError> {
        if points.len() < 2 {
            return Err(PathError::TooFewWaypoints(points.len()));
        }
        Ok(CenterPath::Waypoints(points))
    }

    /// Center position at parameter `t`, clamped to `[0, 1]`.
    pub fn at(&self, t: f64) -> Vector3<f64> {
        let t = t.clamp(0.0, 1.0);
        match self {
            CenterPath::Parametric(f) => f(t),
            CenterPath::Waypoints(points) => {
                let segments = points.len() - 1;
                let scaled = t * segments as f64;
                let idx = (scaled.floor() as usize).min(segments - 1);
                let frac = scaled - idx as f64;
                points[idx] * (1.0 - frac) + points[idx + 1] * frac
            }
        }
    }

    /// Same path traversed backwards.
    pub fn reversed(&self) -> Self {
        match self {
            CenterPath::Waypoints(points) => {
                let mut rev = points.clone();
                rev.reverse();
                CenterPath::Waypoints(rev)
            }
            CenterPath::Parametric(f) => {
                let f = Arc::clone(f);
                CenterPath::Parametric(Arc::new(move |t| f(1.0 - t)))
            }
        }
    }
}

/// Maximal parameter interval with one classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub kind: PositionType,
}

/// A bracketed type transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEvent {
    pub t: f64,
    pub from: PositionType,
    pub to: PositionType,
    /// Final bracket width of the bisection.
    pub width: f64,
}

/// Sweep result: segments tiling `[0, 1]` plus the events between them.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub segments: Vec<Segment>,
    pub events: Vec<TransitionEvent>,
}

impl SweepReport {
    /// Distinct types in path order.
    pub fn segment_kinds(&self) -> Vec<PositionType> {
        self.segments.iter().map(|s| s.kind).collect()
    }
}

fn sphere_at(path: &CenterPath, r: f64, t: f64) -> Sphere {
    Sphere::new(path.at(t), r).expect("radius fixed along the sweep")
}

/// Classification that cannot fail mid-sweep: a band conflict at a sampled
/// point is resolved by widening the clustering band, which turns the
/// offending near-multiple configuration into its tangent type.
fn classify_robust(h: &StdHyperboloid, s: &Sphere, tol: &Tolerances) -> PositionType {
    let mut t = *tol;
    for _ in 0..4 {
        let rs = charpoly::root_set_with(h, s, &t);
        if let Ok(kind) = classify_root_set(&rs, h, s) {
            return kind;
        }
        t.cluster_rel *= 100.0;
    }
    let rs = charpoly::root_set_with(h, s, &t);
    classify_root_set(&rs, h, s).expect("classification failed at every band width")
}

fn delta_at(h: &StdHyperboloid, r: f64, path: &CenterPath, t: f64) -> f64 {
    cardano(&residual_cubic(h, &sphere_at(path, r, t))).delta
}

/// Signed gap between the landmark and the nearest cubic root, skipping the
/// one exact landmark copy that the factored configurations carry.
fn landmark_gap(h: &StdHyperboloid, r: f64, path: &CenterPath, t: f64, landmark: f64) -> f64 {
    let rs = charpoly::root_set_with(h, &sphere_at(path, r, t), &Tolerances::default());
    let mut vals: Vec<f64> = match &rs.cubic {
        CubicRoots::Real(list) => list
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m as usize))
            .collect(),
        CubicRoots::Complex { real, .. } => vec![*real],
    };
    vals.sort_by(|a, b| {
        (a - landmark)
            .abs()
            .partial_cmp(&(b - landmark).abs())
            .unwrap()
    });
    if vals.len() > 1 && vals[0] == landmark {
        vals.remove(0);
    }
    vals[0] - landmark
}

fn uses_negative_landmark(kind: PositionType) -> bool {
    use PositionType::*;
    matches!(kind, I | TI | TIc | Td | Ca)
}

/// Bisects `[lo, hi]` on a sign predicate that is false at `lo` and true at
/// `hi`; returns the midpoint and final width.
fn bisect<F: FnMut(f64) -> bool>(mut lo: f64, mut hi: f64, mut above: F) -> (f64, f64) {
    while hi - lo > EVENT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (0.5 * (lo + hi), hi - lo)
}

#[allow(clippy::too_many_arguments)]
fn refine_transition(
    h: &StdHyperboloid,
    r: f64,
    path: &CenterPath,
    t0: f64,
    t1: f64,
    from: PositionType,
    to: PositionType,
    tol: &Tolerances,
) -> (f64, f64) {
    // tangency transition: the discriminant flips sign
    let d0 = delta_at(h, r, path, t0);
    let d1 = delta_at(h, r, path, t1);
    if d0 != 0.0 && d1 != 0.0 && d0.signum() != d1.signum() {
        let positive_at_hi = d1 > 0.0;
        return bisect(t0, t1, |t| {
            (delta_at(h, r, path, t) > 0.0) == positive_at_hi
        });
    }

    // landmark crossing: track the moving root past -a^2 or c^2
    let landmark = if uses_negative_landmark(from) || uses_negative_landmark(to) {
        -h.a2()
    } else {
        h.c2()
    };
    let g0 = landmark_gap(h, r, path, t0, landmark);
    let g1 = landmark_gap(h, r, path, t1, landmark);
    if g0 != 0.0 && g1 != 0.0 && g0.signum() != g1.signum() {
        let positive_at_hi = g1 > 0.0;
        return bisect(t0, t1, |t| {
            (landmark_gap(h, r, path, t, landmark) > 0.0) == positive_at_hi
        });
    }

    // fallback: bisect directly on the classification
    bisect(t0, t1, |t| {
        classify_robust(h, &sphere_at(path, r, t), tol) != from
    })
}

/// Widened tolerance used to classify the configuration at a bracketed
/// event: a tangency's root gap shrinks like the square root of the
/// distance to the event, so the band must absorb the bracket width.
fn event_tolerances(base: &Tolerances) -> Tolerances {
    Tolerances {
        cluster_rel: base.cluster_rel.max(1e-4),
        ..*base
    }
}

/// Sweeps the sphere along `path`, with default tolerances.
pub fn sweep(h: &StdHyperboloid, r: f64, path: &CenterPath, n_steps: usize) -> SweepReport {
    sweep_with(h, r, path, n_steps, &Tolerances::default())
}

/// Sweeps the sphere of radius `r` along `path`.
///
/// The classification is sampled at `n_steps + 1` points; each change is
/// bisected to [`EVENT_WIDTH`], the bracketed configuration is classified
/// with a width-matched band, and when it differs from both neighbors it is
/// inserted as a degenerate segment between two events.
pub fn sweep_with(
    h: &StdHyperboloid,
    r: f64,
    path: &CenterPath,
    n_steps: usize,
    tol: &Tolerances,
) -> SweepReport {
    assert!(n_steps >= 2, "sweep needs at least 2 steps");

    let samples: Vec<(f64, PositionType)> = (0..=n_steps)
        .map(|i| {
            let t = i as f64 / n_steps as f64;
            (t, classify_robust(h, &sphere_at(path, r, t), tol))
        })
        .collect();

    let mut segments: Vec<Segment> = Vec::new();
    let mut events: Vec<TransitionEvent> = Vec::new();
    let mut seg_start = 0.0f64;
    let mut current = samples[0].1;

    for window in samples.windows(2) {
        let (t0, k0) = window[0];
        let (t1, k1) = window[1];
        if k0 == k1 {
            continue;
        }
        let (t_event, width) = refine_transition(h, r, path, t0, t1, k0, k1, tol);
        let at_event = classify_robust(h, &sphere_at(path, r, t_event), &event_tolerances(tol));

        segments.push(Segment {
            t_start: seg_start,
            t_end: t_event,
            kind: current,
        });
        if at_event != k0 && at_event != k1 {
            // measure-zero configuration at the event instant
            segments.push(Segment {
                t_start: t_event,
                t_end: t_event,
                kind: at_event,
            });
            events.push(TransitionEvent {
                t: t_event,
                from: k0,
                to: at_event,
                width,
            });
            events.push(TransitionEvent {
                t: t_event,
                from: at_event,
                to: k1,
                width,
            });
        } else {
            events.push(TransitionEvent {
                t: t_event,
                from: k0,
                to: k1,
                width,
            });
        }
        seg_start = t_event;
        current = k1;
    }

    segments.push(Segment {
        t_start: seg_start,
        t_end: 1.0,
        kind: current,
    });

    SweepReport { segments, events }
}
