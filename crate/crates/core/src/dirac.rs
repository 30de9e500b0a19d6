//! Pauli and Dirac-representation gamma matrices.
//!
//! Conventions: metric diag(+1, -1, -1, -1), gamma matrices carry upper
//! indices and satisfy `{γ^μ, γ^ν} = 2 η^{μν} I`. The Dirac representation
//! puts `γ^0 = diag(1, 1, -1, -1)` and `γ^k = [[0, σ_k], [-σ_k, 0]]`.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::lorentz::FourVector;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn pauli() -> [Matrix2<Complex64>; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

fn blocks(
    tl: &Matrix2<Complex64>,
    tr: &Matrix2<Complex64>,
    bl: &Matrix2<Complex64>,
    br: &Matrix2<Complex64>,
) -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(tl);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(tr);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(bl);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(br);
    m
}

/// `γ^0 .. γ^3` in the Dirac representation.
pub fn gamma_matrices() -> [Matrix4<Complex64>; 4] {
    let s = pauli();
    let z = Matrix2::zeros();
    let e = Matrix2::identity();
    [
        blocks(&e, &z, &z, &(-e)),
        blocks(&z, &s[0], &(-s[0]), &z),
        blocks(&z, &s[1], &(-s[1]), &z),
        blocks(&z, &s[2], &(-s[2]), &z),
    ]
}

/// `Σ_k p_k γ_k` with lowered gammas, i.e. `p0 γ^0 - p1 γ^1 - p2 γ^2 - p3 γ^3`.
/// Squares to `(p·p) I`.
pub fn slash(p: &FourVector) -> Matrix4<Complex64> {
    let g = gamma_matrices();
    let c = |x: f64| Complex64::new(x, 0.0);
    g[0] * c(p.p0) - g[1] * c(p.p1) - g[2] * c(p.p2) - g[3] * c(p.p3)
}

/// Spin generators `Σ_k = diag(σ_k, σ_k)`.
pub(crate) fn spin(axis: &[f64; 3]) -> Matrix4<Complex64> {
    let s = pauli();
    let n = s[0] * Complex64::new(axis[0], 0.0)
        + s[1] * Complex64::new(axis[1], 0.0)
        + s[2] * Complex64::new(axis[2], 0.0);
    blocks(&n, &Matrix2::zeros(), &Matrix2::zeros(), &n)
}

/// Boost generators `α_k = γ^0 γ^k = [[0, σ_k], [σ_k, 0]]`.
pub(crate) fn alpha(axis: &[f64; 3]) -> Matrix4<Complex64> {
    let s = pauli();
    let n = s[0] * Complex64::new(axis[0], 0.0)
        + s[1] * Complex64::new(axis[1], 0.0)
        + s[2] * Complex64::new(axis[2], 0.0);
    blocks(&Matrix2::zeros(), &n, &n, &Matrix2::zeros())
}

/// Dirac conjugate inverse: for any spinor image of the Lorentz group,
/// `S^{-1} = γ^0 S^† γ^0`.
pub(crate) fn spinor_inverse(s: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let g0 = gamma_matrices()[0];
    g0 * s.adjoint() * g0
}
