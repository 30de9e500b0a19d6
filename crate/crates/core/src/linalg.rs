//! Dense complex matrix helpers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |U†U - I|`
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(u.adjoint() * u - CMatrix::identity(u.nrows(), u.ncols())))
}

/// `max |H - H†|`
pub fn hermiticity_defect(h: &CMatrix) -> f64 {
    if !h.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(h - h.adjoint()))
}

/// Matrix exponential (scaling and squaring with Padé approximants).
pub fn expm(a: &CMatrix) -> CMatrix {
    a.clone().exp()
}

/// `exp(-i t H)` for hermitian `H`, through its eigendecomposition.
pub fn exp_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let defect = hermiticity_defect(h);
    if defect > 1e-12 {
        return Err(Error::NotHermitian { defect });
    }
    if t == 0.0 {
        return Ok(CMatrix::identity(h.nrows(), h.ncols()));
    }
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let phases = CVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -t * l)),
    );
    let v = &eig.eigenvectors;
    Ok(v * CMatrix::from_diagonal(&phases) * v.adjoint())
}

/// A hermitian `H` with `exp(-iH) = U`, eigenphases taken in `(-π, π]`.
pub fn hermitian_generator(u: &CMatrix) -> Result<CMatrix> {
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(Error::NotUnitary { defect });
    }
    let schur = u.clone().schur();
    let (q, t) = schur.unpack();
    let n = u.nrows();
    let mut d = CMatrix::zeros(n, n);
    for i in 0..n {
        // U = Q T Q† with T diagonal for a normal matrix; exp(-iλ) = μ
        d[(i, i)] = Complex64::new(-t[(i, i)].arg(), 0.0);
    }
    let h = &q * d * q.adjoint();
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let back = exp_hermitian(&h, 1.0)?;
    let err = max_abs(&(back - u));
    if err > 1e-10 {
        return Err(Error::NotUnitary { defect: err });
    }
    Ok(h)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    out
}

/// `<u, v>`, antilinear in `u`.
pub fn inner(u: &CVector, v: &CVector) -> Complex64 {
    u.dotc(v)
}
