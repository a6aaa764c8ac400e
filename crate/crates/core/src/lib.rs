//! Relative-position analysis of a circular one-sheet hyperboloid and a
//! sphere.
//!
//! The pair is classified through the roots of the characteristic
//! polynomial of its matrix pencil: the root configuration, read against
//! the landmark values `-a^2`, `c^2` and `ar`, pins down one of thirteen
//! relative positions, including every tangent arrangement. On top of the
//! classifier sit a contact predicate with closed-form tangent loci, a
//! discriminant-only fast path for the common size regime, a brute-force
//! sampling oracle for cross-validation, and a moving-sphere sweep that
//! brackets transition instants.
//!
//! Modules:
//! - [`geom`]: quadric matrices, poses, normalization adapters
//! - [`charpoly`]: the pencil polynomial, cubic solver, clustered roots
//! - [`mod@classify`]: position types, contact status, tangent loci
//! - [`oracle`]: dense-sampling verification
//! - [`mod@sweep`]: classification along a moving-center path
//!
//! ```
//! use nalgebra::Vector3;
//! use relpos_core::{classify, PositionType, Sphere, StdHyperboloid};
//!
//! let h = StdHyperboloid::new(1.5, 1.6)?;
//! let s = Sphere::new(Vector3::new(2.1, 2.2, 0.3), 1.4)?;
//! assert_eq!(classify(&h, &s)?, PositionType::E);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod charpoly;
pub mod classify;
pub mod geom;
pub mod oracle;
pub mod sweep;

pub use charpoly::{
    cardano, full_quartic, residual_cubic, root_set, root_set_with, solve_cubic, CubicPoly,
    CubicRoots, Discriminant, QuarticPoly, RootSet, Tolerances,
};
pub use classify::{
    classify, contact_status, fast_contact, regime, tangent_locus, ContactStatus, FastVerdict,
    PositionType, Regime, RegimeClass, Side, TangentLocus, UnclassifiableRoots,
};
pub use geom::{
    classify_point, normalize, recover_standard_form, PointClass, RigidPose, Sphere,
    StdHyperboloid, SymQuadric4,
};
pub use oracle::{
    oracle_contact, oracle_side, sample_surface, GridSpec, OracleContact, OracleSide, SampleGrid,
};
pub use sweep::{sweep, CenterPath, Segment, SweepReport, TransitionEvent};
