//! Minkowski geometry and proper orthochronous Lorentz transformations.
//!
//! Components are ordered energy first, `(p0, p1, p2, p3)`, with metric
//! signature `(+, -, -, -)` and `c = 1`.
//!
//! Every [`LorentzTransform`] carries, next to its 4x4 vector matrix, the
//! Dirac-representation spinor matrix of the group word that produced it.
//! The spinor factor is what the little-group representation reads off, and
//! tracking it through products keeps the cocycle strict (a 2π rotation is
//! the identity on four-vectors but `-I` on spinors).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirac::{self, ONE};
use crate::error::{Error, Result};
use crate::tolerance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl FourVector {
    pub const fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self { p0, p1, p2, p3 }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// The rest momentum `(m, 0, 0, 0)`.
    pub const fn rest(mass: f64) -> Self {
        Self::new(mass, 0.0, 0.0, 0.0)
    }

    /// Lifts a spatial momentum onto the forward hyperboloid of mass `m`.
    pub fn on_shell(mass: f64, q: [f64; 3]) -> Self {
        let e = (mass * mass + q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        Self::new(e, q[0], q[1], q[2])
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn spatial_norm(&self) -> f64 {
        (self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3).sqrt()
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::new(self.p0, self.p1, self.p2, self.p3)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `|p·p - m²|`, scaled by `max(1, p0²)` so the test is relative for
    /// large energies.
    pub fn shell_residual(&self, mass: f64) -> f64 {
        (minkowski_inner(self, self) - mass * mass).abs() / self.p0.abs().powi(2).max(1.0)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.p0 + o.p0, self.p1 + o.p1, self.p2 + o.p2, self.p3 + o.p3)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.p0 - o.p0, self.p1 - o.p1, self.p2 - o.p2, self.p3 - o.p3)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector::new(-self.p0, -self.p1, -self.p2, -self.p3)
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, p: FourVector) -> FourVector {
        FourVector::new(self * p.p0, self * p.p1, self * p.p2, self * p.p3)
    }
}

impl fmt::Display for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p0, self.p1, self.p2, self.p3)
    }
}

/// `k0 g0 - k1 g1 - k2 g2 - k3 g3`.
pub fn minkowski_inner(k: &FourVector, g: &FourVector) -> f64 {
    k.p0 * g.p0 - k.p1 * g.p1 - k.p2 * g.p2 - k.p3 * g.p3
}

pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitTag {
    TimeLikeForward,
    TimeLikeBackward,
    SpaceLike,
    LightLikeForward,
    LightLikeBackward,
    Origin,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub tag: OrbitTag,
    /// `p·p`
    pub mass_sq: f64,
}

/// Classifies `p` by the sign of `p·p` and of `p0`. Values of `p·p`
/// within `tol` of zero count as light-like, or as the origin when every
/// component is also within `tol`.
pub fn classify_orbit(p: &FourVector, tol: f64) -> OrbitClass {
    let mass_sq = minkowski_inner(p, p);
    let tag = if mass_sq.abs() < tol {
        if p.max_abs() < tol {
            OrbitTag::Origin
        } else if p.p0 > 0.0 {
            OrbitTag::LightLikeForward
        } else {
            OrbitTag::LightLikeBackward
        }
    } else if mass_sq > 0.0 {
        if p.p0 > 0.0 {
            OrbitTag::TimeLikeForward
        } else {
            OrbitTag::TimeLikeBackward
        }
    } else {
        OrbitTag::SpaceLike
    };
    OrbitClass { tag, mass_sq }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LittleGroupTag {
    So3Timelike,
    /// Reported as SO(3) for space-like momenta as stated in the source
    /// construction; the textbook stabilizer is SO(2,1). Nothing is induced
    /// from it here.
    So3Spacelike,
    Euclidean2Lightlike,
    FullLorentzOrigin,
}

pub fn little_group_of(c: &OrbitClass) -> LittleGroupTag {
    match c.tag {
        OrbitTag::TimeLikeForward | OrbitTag::TimeLikeBackward => LittleGroupTag::So3Timelike,
        OrbitTag::SpaceLike => LittleGroupTag::So3Spacelike,
        OrbitTag::LightLikeForward | OrbitTag::LightLikeBackward => {
            LittleGroupTag::Euclidean2Lightlike
        }
        OrbitTag::Origin => LittleGroupTag::FullLorentzOrigin,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    Rotation,
    Boost,
    Composite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LorentzTransform {
    matrix: Matrix4<f64>,
    spinor: Matrix4<Complex64>,
    kind: TransformKind,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
            spinor: Matrix4::identity(),
            kind: TransformKind::Rotation,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    /// Dirac-representation image of the transform, `S` with
    /// `S slash(p) S^{-1} = slash(Λp)`.
    pub fn spinor(&self) -> &Matrix4<Complex64> {
        &self.spinor
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        FourVector::from_vector(&(self.matrix * p.as_vector()))
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        let kind = match (self.kind, other.kind) {
            (TransformKind::Rotation, TransformKind::Rotation) => TransformKind::Rotation,
            _ => TransformKind::Composite,
        };
        LorentzTransform {
            matrix: self.matrix * other.matrix,
            spinor: self.spinor * other.spinor,
            kind,
        }
    }

    pub fn inverse(&self) -> LorentzTransform {
        let eta = metric();
        LorentzTransform {
            matrix: eta * self.matrix.transpose() * eta,
            spinor: dirac::spinor_inverse(&self.spinor),
            kind: self.kind,
        }
    }

    /// `max |ΛᵀηΛ - η|`.
    pub fn metric_defect(&self) -> f64 {
        let eta = metric();
        max_abs(&(self.matrix.transpose() * eta * self.matrix - eta))
    }

    /// Largest entrywise difference of the vector matrices.
    pub fn deviation(&self, other: &LorentzTransform) -> f64 {
        max_abs(&(self.matrix - other.matrix))
    }

    /// Largest entrywise difference of the spinor matrices.
    pub fn spinor_deviation(&self, other: &LorentzTransform) -> f64 {
        (self.spinor - other.spinor)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of `Λ (m,0,0,0)` from `(m,0,0,0)`.
    pub fn stabilizer_defect(&self, mass: f64) -> f64 {
        let rest = FourVector::rest(mass);
        (self.apply(&rest) - rest).max_abs()
    }

    /// Deviation of the spatial 3x3 block from an orthogonal matrix.
    pub fn spatial_orthogonality_defect(&self) -> f64 {
        let r = self.matrix.fixed_view::<3, 3>(1, 1).into_owned();
        max_abs3(&(r.transpose() * r - nalgebra::Matrix3::identity()))
    }

    pub(crate) fn with_kind(mut self, kind: TransformKind) -> Self {
        self.kind = kind;
        self
    }
}

impl Mul for &LorentzTransform {
    type Output = LorentzTransform;
    fn mul(self, rhs: &LorentzTransform) -> LorentzTransform {
        self.compose(rhs)
    }
}

fn max_abs(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

fn max_abs3(m: &nalgebra::Matrix3<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

fn check_unit(axis: &[f64; 3]) -> Result<()> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > tolerance::METRIC || !norm.is_finite() {
        return Err(Error::NonUnitAxis { norm });
    }
    Ok(())
}

/// Rotation `1 ⊕ R(axis, angle)`, counter-clockwise about `axis`.
pub fn rotation(axis: [f64; 3], angle: f64) -> Result<LorentzTransform> {
    check_unit(&axis)?;
    let [x, y, z] = axis;
    let (s, c) = angle.sin_cos();
    // 1 - cos θ without cancellation near θ = 0
    let t = 2.0 * (0.5 * angle).sin().powi(2);
    let r = [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ];
    let mut matrix = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            matrix[(i + 1, j + 1)] = r[i][j];
        }
    }
    let (hs, hc) = (0.5 * angle).sin_cos();
    let spinor = Matrix4::identity() * Complex64::new(hc, 0.0)
        - dirac::spin(&axis) * Complex64::new(0.0, hs);
    Ok(LorentzTransform {
        matrix,
        spinor,
        kind: TransformKind::Rotation,
    })
}

/// Pure boost along `axis` with the given rapidity.
pub fn boost(axis: [f64; 3], rapidity: f64) -> Result<LorentzTransform> {
    check_unit(&axis)?;
    let ch = rapidity.cosh();
    let sh = rapidity.sinh();
    let chm1 = 2.0 * (0.5 * rapidity).sinh().powi(2);
    let mut matrix = Matrix4::identity();
    matrix[(0, 0)] = ch;
    for i in 0..3 {
        matrix[(0, i + 1)] = sh * axis[i];
        matrix[(i + 1, 0)] = sh * axis[i];
        for j in 0..3 {
            matrix[(i + 1, j + 1)] += chm1 * axis[i] * axis[j];
        }
    }
    let spinor = Matrix4::identity() * Complex64::new((0.5 * rapidity).cosh(), 0.0)
        + dirac::alpha(&axis) * Complex64::new((0.5 * rapidity).sinh(), 0.0);
    Ok(LorentzTransform {
        matrix,
        spinor,
        kind: TransformKind::Boost,
    })
}

/// The pure boost `L(p)` taking `(m,0,0,0)` to `p`.
pub fn standard_boost(p: &FourVector, mass: f64) -> Result<LorentzTransform> {
    if !(mass > 0.0) {
        return Err(Error::NonPositiveMass { mass });
    }
    let residual = p.shell_residual(mass);
    if residual > tolerance::ON_SHELL || p.p0 <= 0.0 || !p.is_finite() {
        return Err(Error::OffShell { residual });
    }
    let e = p.p0;
    let q = p.spatial();
    let mut matrix = Matrix4::identity();
    matrix[(0, 0)] = e / mass;
    for i in 0..3 {
        matrix[(0, i + 1)] = q[i] / mass;
        matrix[(i + 1, 0)] = q[i] / mass;
        for j in 0..3 {
            matrix[(i + 1, j + 1)] += q[i] * q[j] / (mass * (e + mass));
        }
    }
    let norm = (2.0 * mass * (e + mass)).sqrt();
    let spinor = (Matrix4::identity() * Complex64::new(e + mass, 0.0) + dirac::alpha(&q) * ONE)
        * Complex64::new(1.0 / norm, 0.0);
    Ok(LorentzTransform {
        matrix,
        spinor,
        kind: TransformKind::Boost,
    })
}

/// `L(gp)^{-1} · g · L(p)`, the little-group element selected by the
/// boost section.
pub fn wigner_rotation(g: &LorentzTransform, p: &FourVector, mass: f64) -> Result<LorentzTransform> {
    let lp = standard_boost(p, mass)?;
    let lgp = standard_boost(&g.apply(p), mass)?;
    Ok(lgp.inverse().compose(g).compose(&lp).with_kind(TransformKind::Rotation))
}

/// Element `(Λ, a)` of the semidirect product with `(h1,a1)(h2,a2) = (h1h2, a1 + h1 a2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoincareElement {
    pub lorentz: LorentzTransform,
    pub translation: FourVector,
}

impl PoincareElement {
    pub fn new(lorentz: LorentzTransform, translation: FourVector) -> Self {
        Self { lorentz, translation }
    }

    pub fn identity() -> Self {
        Self::new(LorentzTransform::identity(), FourVector::zero())
    }

    pub fn compose(&self, other: &PoincareElement) -> PoincareElement {
        PoincareElement {
            lorentz: self.lorentz.compose(&other.lorentz),
            translation: self.translation + self.lorentz.apply(&other.translation),
        }
    }

    /// `(h^{-1}, h^{-1}[-a])`
    pub fn inverse(&self) -> PoincareElement {
        let inv = self.lorentz.inverse();
        let translation = inv.apply(&(-self.translation));
        PoincareElement {
            lorentz: inv,
            translation,
        }
    }

    /// Affine action `x ↦ Λx + a` on spacetime points.
    pub fn act(&self, x: &FourVector) -> FourVector {
        self.lorentz.apply(x) + self.translation
    }

    pub fn deviation(&self, other: &PoincareElement) -> f64 {
        self.lorentz
            .deviation(&other.lorentz)
            .max((self.translation - other.translation).max_abs())
    }
}
