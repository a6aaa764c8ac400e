//! Quadric primitives and rigid-pose adapters.
//!
//! Everything downstream of this module works on a hyperboloid in standard
//! position: centered at the origin, circular cross section, symmetry axis
//! along OZ. A world-posed hyperboloid is carried as an explicit
//! [`RigidPose`] next to its [`StdHyperboloid`] and mapped back to the
//! standard frame with [`normalize`]; callers holding only a homogeneous
//! matrix can go through [`recover_standard_form`] instead.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use thiserror::Error;

/// Relative band for deciding that a point sits on the hyperboloid surface.
pub const ON_SURFACE_EPS: f64 = 1e-10;

/// Tolerance on `rotation^T * rotation = Id` and `det(rotation) = +1`.
pub const POSE_EPS: f64 = 1e-12;

/// Relative tolerance on the two transverse eigenvalues in
/// [`recover_standard_form`]; wider gaps are rejected as non-circular.
pub const CIRCULARITY_EPS: f64 = 1e-9;

/// Construction errors for the geometric value types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("hyperboloid semi-axes must be positive, got a = {a}, c = {c}")]
    NonPositiveSemiAxis { a: f64, c: f64 },
    #[error("sphere radius must be positive, got r = {r}")]
    NonPositiveRadius { r: f64 },
    #[error("sphere center must be finite")]
    NonFiniteCenter,
    #[error("rotation matrix is not orthonormal with determinant +1")]
    InvalidRotation,
}

/// Errors from [`recover_standard_form`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecoverError {
    /// The two transverse eigenvalues differ by more than [`CIRCULARITY_EPS`]
    /// relative; the quadric is a non-circular hyperboloid.
    #[error("transverse eigenvalues {0} and {1} differ beyond the circularity tolerance")]
    NotCircular(f64, f64),
    /// The scaled 3x3 block does not have signature (+, +, -), so the quadric
    /// is not a one-sheet hyperboloid.
    #[error("quadric does not have one-sheet hyperboloid signature")]
    WrongSignature,
}

/// Circular one-sheet hyperboloid in standard position:
/// `x^2/a^2 + y^2/a^2 - z^2/c^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StdHyperboloid {
    a: f64,
    c: f64,
}

impl StdHyperboloid {
    /// Builds a hyperboloid from the equatorial radius `a` and vertical
    /// semi-axis `c`; both must be strictly positive and finite.
    pub fn new(a: f64, c: f64) -> Result<Self, GeomError> {
        if !a.is_finite() || !c.is_finite() || a <= 0.0 || c <= 0.0 {
            return Err(GeomError::NonPositiveSemiAxis { a, c });
        }
        Ok(Self { a, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `a^2`
    pub fn a2(&self) -> f64 {
        self.a * self.a
    }

    /// `c^2`
    pub fn c2(&self) -> f64 {
        self.c * self.c
    }

    /// Homogeneous 4x4 matrix of the surface: `diag(a^-2, a^-2, -c^-2, -1)`.
    pub fn matrix(&self) -> SymQuadric4 {
        let ia2 = 1.0 / self.a2();
        let ic2 = 1.0 / self.c2();
        SymQuadric4::from_upper([ia2, 0.0, 0.0, 0.0, ia2, 0.0, 0.0, -ic2, 0.0, -1.0])
    }

    /// Point of the surface at chart coordinates `(theta, t)`:
    /// `(a cosh t cos theta, a cosh t sin theta, c sinh t)`.
    ///
    /// The chart covers the whole sheet; it is the sampling domain of the
    /// brute-force oracle.
    pub fn surface_point(&self, theta: f64, t: f64) -> Vector3<f64> {
        let rho = self.a * t.cosh();
        Vector3::new(rho * theta.cos(), rho * theta.sin(), self.c * t.sinh())
    }

    /// Signed value of the implicit function `x^2/a^2 + y^2/a^2 - z^2/c^2 - 1`
    /// at `p`; negative inside the tube, positive outside.
    pub fn implicit(&self, p: &Vector3<f64>) -> f64 {
        let ia2 = 1.0 / self.a2();
        (p.x * p.x + p.y * p.y) * ia2 - p.z * p.z / self.c2() - 1.0
    }
}

/// Sphere with the usual center/radius parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    center: Vector3<f64>,
    r: f64,
}

impl Sphere {
    pub fn new(center: Vector3<f64>, r: f64) -> Result<Self, GeomError> {
        if !r.is_finite() || r <= 0.0 {
            return Err(GeomError::NonPositiveRadius { r });
        }
        if !center.iter().all(|v| v.is_finite()) {
            return Err(GeomError::NonFiniteCenter);
        }
        Ok(Self { center, r })
    }

    pub fn center(&self) -> Vector3<f64> {
        self.center
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Cylindrical radius of the center, `sqrt(x_c^2 + y_c^2)`.
    pub fn rho_c(&self) -> f64 {
        self.center.x.hypot(self.center.y)
    }

    /// Cylindrical angle of the center. Zero when the center sits on the OZ
    /// axis.
    pub fn theta_c(&self) -> f64 {
        if self.rho_c() == 0.0 {
            0.0
        } else {
            self.center.y.atan2(self.center.x)
        }
    }

    pub fn z_c(&self) -> f64 {
        self.center.z
    }

    /// Homogeneous 4x4 matrix of the sphere: identity 3x3 block, last
    /// column `-center`, corner `-r^2 + |center|^2`.
    pub fn matrix(&self) -> SymQuadric4 {
        let c = self.center;
        let corner = -self.r * self.r + c.norm_squared();
        SymQuadric4::from_upper([1.0, 0.0, 0.0, -c.x, 1.0, 0.0, -c.y, 1.0, -c.z, corner])
    }
}

/// Symmetric 4x4 homogeneous quadric form, stored as the upper triangle in
/// row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymQuadric4 {
    // (0,0) (0,1) (0,2) (0,3) (1,1) (1,2) (1,3) (2,2) (2,3) (3,3)
    upper: [f64; 10],
}

impl SymQuadric4 {
    pub fn from_upper(upper: [f64; 10]) -> Self {
        Self { upper }
    }

    /// Symmetrizes an arbitrary 4x4 matrix by averaging transposed pairs.
    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        let mut upper = [0.0; 10];
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                upper[k] = 0.5 * (m[(i, j)] + m[(j, i)]);
                k += 1;
            }
        }
        Self { upper }
    }

    fn upper_index(i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // row offsets into the packed upper triangle: 0, 4, 7, 9
        const OFFSET: [usize; 4] = [0, 4, 7, 9];
        OFFSET[i] + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[Self::upper_index(i, j)]
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }

    /// Quadratic form `X^t M X` for a homogeneous 4-vector.
    pub fn eval_hom(&self, x: &Vector4<f64>) -> f64 {
        let m = self.to_matrix();
        (x.transpose() * m * x)[0]
    }

    /// Quadratic form at an affine point, with homogeneous coordinate 1.
    pub fn eval_point(&self, p: &Vector3<f64>) -> f64 {
        self.eval_hom(&Vector4::new(p.x, p.y, p.z, 1.0))
    }

    /// Gradient of the affine quadric `x^t A x + 2 b^t x + d` at `p`,
    /// i.e. `2 (A p + b)`.
    pub fn gradient(&self, p: &Vector3<f64>) -> Vector3<f64> {
        let a = self.block3();
        let b = Vector3::new(self.get(0, 3), self.get(1, 3), self.get(2, 3));
        2.0 * (a * p + b)
    }

    /// Upper-left 3x3 block.
    pub fn block3(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.get(0, 0),
            self.get(0, 1),
            self.get(0, 2),
            self.get(0, 1),
            self.get(1, 1),
            self.get(1, 2),
            self.get(0, 2),
            self.get(1, 2),
            self.get(2, 2),
        )
    }

    pub fn determinant(&self) -> f64 {
        self.to_matrix().determinant()
    }

    /// The quadric of the same surface expressed in world coordinates after
    /// placing it with `pose`: `Q -> T^-t Q T^-1` where `T` maps standard to
    /// world points.
    pub fn transformed(&self, pose: &RigidPose) -> SymQuadric4 {
        let t_inv = pose.inverse_homogeneous();
        SymQuadric4::from_matrix(&(t_inv.transpose() * self.to_matrix() * t_inv))
    }
}

/// Sign classification of a point against the hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    OnSurface,
    Exterior,
}

/// Classifies a point by the sign of the implicit hyperboloid function,
/// with an [`ON_SURFACE_EPS`]-relative dead band around zero.
pub fn classify_point(h: &StdHyperboloid, p: &Vector3<f64>) -> PointClass {
    let ia2 = 1.0 / h.a2();
    let ic2 = 1.0 / h.c2();
    let planar = (p.x * p.x + p.y * p.y) * ia2;
    let vertical = p.z * p.z * ic2;
    let value = planar - vertical - 1.0;
    let scale = planar + vertical + 1.0;
    if value.abs() <= ON_SURFACE_EPS * scale {
        PointClass::OnSurface
    } else if value < 0.0 {
        PointClass::Interior
    } else {
        PointClass::Exterior
    }
}

/// Proper rigid motion: rotation followed by translation.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidPose {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl RigidPose {
    /// Validates that `rotation` is orthonormal with determinant +1 to
    /// within [`POSE_EPS`].
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self, GeomError> {
        let gram = rotation.transpose() * rotation;
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((gram[(i, j)] - target).abs());
            }
        }
        if dev > POSE_EPS || (rotation.determinant() - 1.0).abs() > POSE_EPS {
            return Err(GeomError::InvalidRotation);
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> Vector3<f64> {
        self.translation
    }

    /// Standard-frame point to world point.
    pub fn apply(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    /// World point back to the standard frame.
    pub fn apply_inverse(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation.transpose() * (p - self.translation)
    }

    /// Homogeneous matrix of the inverse motion (world to standard).
    pub fn inverse_homogeneous(&self) -> Matrix4<f64> {
        let rt = self.rotation.transpose();
        let t = -rt * self.translation;
        let mut m = Matrix4::identity();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = rt[(i, j)];
            }
            m[(i, 3)] = t[i];
        }
        m
    }
}

/// Maps a world-posed hyperboloid/sphere pair to the standard frame.
///
/// The hyperboloid parameters are unchanged; the sphere center is pulled
/// through the inverse pose and the radius is preserved. The characteristic
/// roots of the returned pair equal those of the world pair.
pub fn normalize(h: &StdHyperboloid, pose: &RigidPose, s: &Sphere) -> (StdHyperboloid, Sphere) {
    let center = pose.apply_inverse(&s.center());
    let sphere = Sphere::new(center, s.r()).expect("radius preserved by rigid motion");
    (*h, sphere)
}

/// Recovers `(StdHyperboloid, RigidPose)` from a homogeneous quadric matrix.
///
/// The quadric `x^t A x + 2 b^t x + d = 0` is centered (solving `A x0 = -b`),
/// rescaled so the affine constant is -1, and eigen-decomposed. The two equal
/// positive eigenvalues give `a`, the negative one gives `c`, and the
/// eigenvector of the negative eigenvalue becomes the pose's OZ axis.
pub fn recover_standard_form(q: &SymQuadric4) -> Result<(StdHyperboloid, RigidPose), RecoverError> {
    let a = q.block3();
    let b = Vector3::new(q.get(0, 3), q.get(1, 3), q.get(2, 3));
    let d = q.get(3, 3);

    let center = a.lu().solve(&(-b)).ok_or(RecoverError::WrongSignature)?;
    let k = d + b.dot(&center);
    if k == 0.0 || !k.is_finite() {
        // affine constant vanishes: a cone, not a hyperboloid
        return Err(RecoverError::WrongSignature);
    }
    let scaled = a / (-k);

    let mut eigenvalues: Vec<f64> = scaled.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (ln, lp1, lp2) = (eigenvalues[0], eigenvalues[1], eigenvalues[2]);
    if !(ln < 0.0 && lp1 > 0.0 && lp2 > 0.0) {
        return Err(RecoverError::WrongSignature);
    }
    if (lp1 - lp2).abs() > CIRCULARITY_EPS * lp1.abs().max(lp2.abs()) {
        return Err(RecoverError::NotCircular(lp1, lp2));
    }

    let lp = 0.5 * (lp1 + lp2);
    let hyperboloid = StdHyperboloid::new(lp.powf(-0.5), (-ln).powf(-0.5))
        .expect("eigenvalue signs checked above");

    // Eigenvectors of the doubly degenerate transverse pair are numerically
    // ill-determined, so never ask an eigensolver for them. Instead,
    // `scaled - lp * Id` is the rank-1 matrix `(ln - lp) * u * u^t` whose
    // largest column is parallel to the axis `u`; any orthonormal
    // completion serves as the transverse pair.
    let rank1 = scaled - Matrix3::identity() * lp;
    let mut axis = rank1.column(0).into_owned();
    for j in 1..3 {
        let col = rank1.column(j).into_owned();
        if col.norm() > axis.norm() {
            axis = col;
        }
    }
    if axis.norm() == 0.0 {
        return Err(RecoverError::WrongSignature);
    }
    let axis = axis.normalize();
    let seed = if axis.x.abs() <= axis.y.abs().min(axis.z.abs()) {
        Vector3::x()
    } else if axis.y.abs() <= axis.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let v1 = axis.cross(&seed).normalize();
    let v2 = axis.cross(&v1);
    // [v1, v2, axis] is right-handed since v1 x v2 = axis
    let rotation = Matrix3::from_columns(&[v1, v2, axis]);
    let pose = RigidPose::new(rotation, center).map_err(|_| RecoverError::WrongSignature)?;
    Ok((hyperboloid, pose))
}
