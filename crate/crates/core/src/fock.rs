//! Symmetric Fock space over `C^d`, truncated at total particle number `N`.
//!
//! Basis states are occupation tuples `(n_1 .. n_d)` with `Σ n_i <= N`,
//! ordered by total number and, within a number shell, lexicographically
//! from the highest occupation of mode 1 down. The vacuum has index 0.
//!
//! Conventions: inner products are antilinear in the first argument,
//! `a†(u) = Σ u_i a†_i`, `a(u) = a†(u)†`, and
//! `W(u, U) = exp(a†(u) - a(u)) Γ(U)`, so that
//! `W(u,U) e(v) = exp(-‖u‖²/2 - <u, Uv>) e(u + Uv)` and
//! `W(u1,U1) W(u2,U2) = exp(-i Im<u1, U1 u2>) W(u1 + U1 u2, U1 U2)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, exp_hermitian, expm, hermiticity_defect, max_abs, unitarity_defect, CMatrix, CVector};

/// Default guard band: identities are checked on number `<= N - 4`.
pub const DEFAULT_GUARD: u32 = 4;

#[derive(Debug, PartialEq)]
pub struct FockSpace {
    dim: usize,
    cutoff: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    raise: Vec<Vec<Option<usize>>>,
    lower: Vec<Vec<Option<usize>>>,
}

fn compositions(dim: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == dim {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in (0..=total).rev() {
        prefix.push(k);
        compositions(dim, total - k, prefix, out);
        prefix.pop();
    }
}

impl FockSpace {
    pub fn new(one_particle_dim: usize, cutoff: u32) -> Result<Arc<Self>> {
        if one_particle_dim == 0 {
            return Err(Error::InvalidParameter {
                name: "one_particle_dim",
                reason: "must be at least 1".into(),
            });
        }
        let mut basis = Vec::new();
        for n in 0..=cutoff {
            compositions(one_particle_dim, n, &mut Vec::new(), &mut basis);
        }
        let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let shift = |occ: &Vec<u32>, mode: usize, up: bool| -> Option<usize> {
            let mut next = occ.clone();
            if up {
                next[mode] += 1;
            } else {
                next[mode] = next[mode].checked_sub(1)?;
            }
            index.get(&next).copied()
        };
        let raise = basis
            .iter()
            .map(|b| (0..one_particle_dim).map(|i| shift(b, i, true)).collect())
            .collect();
        let lower = basis
            .iter()
            .map(|b| (0..one_particle_dim).map(|i| shift(b, i, false)).collect())
            .collect();
        Ok(Arc::new(Self {
            dim: one_particle_dim,
            cutoff,
            basis,
            index,
            raise,
            lower,
        }))
    }

    pub fn one_particle_dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn occupation(&self, i: usize) -> &[u32] {
        &self.basis[i]
    }

    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    pub fn total_number(&self, i: usize) -> u32 {
        self.basis[i].iter().sum()
    }

    /// Indices of states with total number `<= N - guard`.
    pub fn guarded_indices(&self, guard: u32) -> Vec<usize> {
        match self.cutoff.checked_sub(guard) {
            Some(top) => (0..self.len()).filter(|&i| self.total_number(i) <= top).collect(),
            None => Vec::new(),
        }
    }

    fn check_vector(&self, u: &CVector) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: u.len(),
            });
        }
        Ok(())
    }

    fn check_matrix(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: m.nrows().max(m.ncols()),
            });
        }
        Ok(())
    }

    /// `a†(u) x`, dropping whatever would leave the truncated space.
    pub(crate) fn create_into(&self, u: &CVector, x: &CVector) -> CVector {
        let mut out = CVector::zeros(self.len());
        for (s, amp) in x.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            for (i, target) in self.raise[s].iter().enumerate() {
                if let Some(t) = *target {
                    let f = ((self.basis[s][i] + 1) as f64).sqrt();
                    out[t] += u[i] * amp * f;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    pub space: Arc<FockSpace>,
    pub amplitudes: CVector,
}

impl FockState {
    pub fn vacuum(space: &Arc<FockSpace>) -> Self {
        let mut amplitudes = CVector::zeros(space.len());
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self {
            space: space.clone(),
            amplitudes,
        }
    }

    pub fn inner(&self, other: &FockState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    pub space: Arc<FockSpace>,
    pub matrix: CMatrix,
}

impl FockOperator {
    pub fn new(space: Arc<FockSpace>, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != space.len() || matrix.ncols() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                actual: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &Arc<FockSpace>) -> Self {
        Self {
            space: space.clone(),
            matrix: CMatrix::identity(space.len(), space.len()),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self · other`
    pub fn then(&self, other: &FockOperator) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * z,
        }
    }

    pub fn apply(&self, state: &FockState) -> FockState {
        FockState {
            space: self.space.clone(),
            amplitudes: &self.matrix * &state.amplitudes,
        }
    }

    pub fn deviation(&self, other: &FockOperator) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }

    /// Max-entry deviation on the compression to number `<= N - guard`.
    pub fn guarded_deviation(&self, other: &FockOperator, guard: u32) -> f64 {
        let idx = self.space.guarded_indices(guard);
        let mut worst: f64 = 0.0;
        for &c in &idx {
            for &r in &idx {
                worst = worst.max((self.matrix[(r, c)] - other.matrix[(r, c)]).norm());
            }
        }
        worst
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }

    pub fn guarded_unitarity_defect(&self, guard: u32) -> f64 {
        let prod = self.adjoint().then(self);
        prod.guarded_deviation(&FockOperator::identity(&self.space), guard)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.matrix)
    }

    pub fn exp(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: expm(&self.matrix),
        }
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument::from_matrix(&self.matrix)
    }
}

/// `{rows, cols, entries: [[re, im], ...]}` in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let mut entries = Vec::with_capacity(m.len());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                entries.push([z.re, z.im]);
            }
        }
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: self.entries.len(),
            });
        }
        Ok(CMatrix::from_row_iterator(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| Complex64::new(e[0], e[1])),
        ))
    }
}

/// `e(u) = ⊕ u^{⊗n} / sqrt(n!)`; coefficient of `(n_1..n_d)` is
/// `Π u_i^{n_i} / sqrt(Π n_i!)`.
pub fn exponential_vector(space: &Arc<FockSpace>, u: &CVector) -> Result<FockState> {
    space.check_vector(u)?;
    let amplitudes = CVector::from_iterator(
        space.len(),
        space.basis.iter().map(|occ| {
            occ.iter().enumerate().fold(Complex64::new(1.0, 0.0), |acc, (i, &n)| {
                let fact: f64 = (1..=n).map(f64::from).product();
                acc * u[i].powu(n) / fact.sqrt()
            })
        }),
    );
    Ok(FockState {
        space: space.clone(),
        amplitudes,
    })
}

pub fn creation(space: &Arc<FockSpace>, u: &CVector) -> Result<FockOperator> {
    space.check_vector(u)?;
    let n = space.len();
    let mut m = CMatrix::zeros(n, n);
    for s in 0..n {
        for (i, target) in space.raise[s].iter().enumerate() {
            if let Some(t) = *target {
                m[(t, s)] += u[i] * ((space.basis[s][i] + 1) as f64).sqrt();
            }
        }
    }
    FockOperator::new(space.clone(), m)
}

pub fn annihilation(space: &Arc<FockSpace>, u: &CVector) -> Result<FockOperator> {
    Ok(creation(space, u)?.adjoint())
}

/// `(p(u), q(u))` with `p = i(a† - a)` and `q = a + a†`, so that
/// `a = (q + ip)/2`, `a† = (q - ip)/2` and `q(u) = -p(iu)`.
pub fn quadratures(space: &Arc<FockSpace>, u: &CVector) -> Result<(FockOperator, FockOperator)> {
    let ad = creation(space, u)?;
    let a = ad.adjoint();
    let i = Complex64::new(0.0, 1.0);
    let p = FockOperator::new(space.clone(), (&ad.matrix - &a.matrix) * i)?;
    let q = FockOperator::new(space.clone(), &a.matrix + &ad.matrix)?;
    Ok((p, q))
}

/// `Γ(M)`, acting as `M^{⊗n}` on each number shell, for any one-particle
/// matrix `M`.
pub fn second_quantize(space: &Arc<FockSpace>, m: &CMatrix) -> Result<FockOperator> {
    space.check_matrix(m)?;
    let n = space.len();
    let columns: Vec<CVector> = (0..space.dim).map(|j| m.column(j).into_owned()).collect();
    let mut out = CMatrix::zeros(n, n);
    for s in 0..n {
        let mut x = CVector::zeros(n);
        x[0] = Complex64::new(1.0, 0.0);
        for (j, &count) in space.basis[s].iter().enumerate() {
            for k in 1..=count {
                x = space.create_into(&columns[j], &x) * Complex64::new(1.0 / (k as f64).sqrt(), 0.0);
            }
        }
        out.set_column(s, &x);
    }
    FockOperator::new(space.clone(), out)
}

/// `Γ(U)` for a unitary `U`.
pub fn second_quantization(space: &Arc<FockSpace>, u: &CMatrix) -> Result<FockOperator> {
    space.check_matrix(u)?;
    let defect = unitarity_defect(u);
    if defect > 1e-12 {
        return Err(Error::NotUnitary { defect });
    }
    second_quantize(space, u)
}

/// `dΓ(H) = Σ_ij H_ij a†_i a_j`.
pub fn number_conservation(space: &Arc<FockSpace>, h: &CMatrix) -> Result<FockOperator> {
    space.check_matrix(h)?;
    let defect = hermiticity_defect(h);
    if defect > 1e-12 {
        return Err(Error::NotHermitian { defect });
    }
    let n = space.len();
    let mut m = CMatrix::zeros(n, n);
    for s in 0..n {
        for j in 0..space.dim {
            let Some(t) = space.lower[s][j] else { continue };
            let down = (space.basis[s][j] as f64).sqrt();
            for i in 0..space.dim {
                let Some(r) = space.raise[t][i] else { continue };
                let up = ((space.basis[t][i] + 1) as f64).sqrt();
                m[(r, s)] += h[(i, j)] * down * up;
            }
        }
    }
    FockOperator::new(space.clone(), m)
}

/// Labels `W(u, U)`: a displacement `u` and a one-particle unitary `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylDescriptor {
    u: CVector,
    unitary: CMatrix,
}

impl WeylDescriptor {
    pub fn new(u: CVector, unitary: CMatrix) -> Result<Self> {
        if unitary.nrows() != u.len() || unitary.ncols() != u.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                actual: unitary.nrows(),
            });
        }
        let defect = unitarity_defect(&unitary);
        if defect > 1e-12 {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { u, unitary })
    }

    /// Pure displacement `W(u, I)`.
    pub fn displacement(u: CVector) -> Self {
        let n = u.len();
        Self {
            u,
            unitary: CMatrix::identity(n, n),
        }
    }

    pub fn u(&self) -> &CVector {
        &self.u
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    /// `(u1, U1)(u2, U2) = (u1 + U1 u2, U1 U2)`
    pub fn compose(&self, other: &WeylDescriptor) -> WeylDescriptor {
        WeylDescriptor {
            u: &self.u + &self.unitary * &other.u,
            unitary: &self.unitary * &other.unitary,
        }
    }
}

/// `exp(a†(u) - a(u))`
pub fn displacement(space: &Arc<FockSpace>, u: &CVector) -> Result<FockOperator> {
    let ad = creation(space, u)?;
    let gen = &ad.matrix - ad.matrix.adjoint();
    FockOperator::new(space.clone(), expm(&gen))
}

/// `W(u, U) = exp(a†(u) - a(u)) Γ(U)`
pub fn weyl_operator(space: &Arc<FockSpace>, w: &WeylDescriptor) -> Result<FockOperator> {
    let d = displacement(space, &w.u)?;
    let gamma = second_quantization(space, &w.unitary)?;
    Ok(d.then(&gamma))
}

/// `exp(-i Im<u1, U1 u2>)`, the multiplier in the composition law.
pub fn composition_phase(w1: &WeylDescriptor, w2: &WeylDescriptor) -> Complex64 {
    let z = linalg::inner(&w1.u, &(&w1.unitary * &w2.u));
    Complex64::from_polar(1.0, -z.im)
}

/// Phase `λ` with `W1 W2 = λ W2 W1` implied by the composition law when
/// both products have the same descriptor.
pub fn commutator_phase(w1: &WeylDescriptor, w2: &WeylDescriptor) -> Complex64 {
    composition_phase(w1, w2) / composition_phase(w2, w1)
}

/// `‖W1 W2 - λ W2 W1‖_max` on the guard-banded subspace.
pub fn commutation_deviation(
    space: &Arc<FockSpace>,
    w1: &WeylDescriptor,
    w2: &WeylDescriptor,
    phase: Complex64,
    guard: u32,
) -> Result<f64> {
    let a = weyl_operator(space, w1)?;
    let b = weyl_operator(space, w2)?;
    Ok(operator_commutation_deviation(&a, &b, phase, guard))
}

/// `‖W1 W2 - exp(i Im<u1, U1 u2>) W2 W1‖_max` on the guard-banded subspace.
///
/// This is the commutation relation in the form it is usually quoted for
/// covariant Weyl families. With the conventions of this module it does not
/// follow from the composition law; see [`commutator_phase`] for the phase
/// that does.
pub fn weyl_commutation_check(space: &Arc<FockSpace>, w1: &WeylDescriptor, w2: &WeylDescriptor, guard: u32) -> Result<f64> {
    commutation_deviation(space, w1, w2, quoted_commutation_phase(w1, w2), guard)
}

/// `exp(i Im<u1, U1 u2>)`, the phase of [`weyl_commutation_check`].
pub fn quoted_commutation_phase(w1: &WeylDescriptor, w2: &WeylDescriptor) -> Complex64 {
    let z = linalg::inner(&w1.u, &(&w1.unitary * &w2.u));
    Complex64::from_polar(1.0, z.im)
}

/// `‖A B - λ B A‖_max` on the guard-banded subspace, for operators already
/// formed.
pub fn operator_commutation_deviation(a: &FockOperator, b: &FockOperator, phase: Complex64, guard: u32) -> f64 {
    a.then(b).guarded_deviation(&b.then(a).scaled(phase), guard)
}

/// `‖W1 W2 - exp(-i Im<u1,U1u2>) W(u1 + U1u2, U1U2)‖_max`, guard-banded.
pub fn weyl_composition_deviation(space: &Arc<FockSpace>, w1: &WeylDescriptor, w2: &WeylDescriptor, guard: u32) -> Result<f64> {
    let lhs = weyl_operator(space, w1)?.then(&weyl_operator(space, w2)?);
    let rhs = weyl_operator(space, &w1.compose(w2))?.scaled(composition_phase(w1, w2));
    Ok(lhs.guarded_deviation(&rhs, guard))
}

/// Data of the additive cocycle `v(t) = t u0 ⊕ ⊕_j (e^{-itH_j} u_j - u_j)`
/// for `U_t = I ⊕ ⊕_j e^{-itH_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleParams {
    pub u0: CVector,
    pub blocks: Vec<(CVector, CMatrix)>,
}

impl CocycleParams {
    pub fn dim(&self) -> usize {
        self.u0.len() + self.blocks.iter().map(|(u, _)| u.len()).sum::<usize>()
    }

    fn validate(&self) -> Result<()> {
        for (u, h) in &self.blocks {
            if h.nrows() != u.len() || h.ncols() != u.len() {
                return Err(Error::DimensionMismatch {
                    expected: u.len(),
                    actual: h.nrows(),
                });
            }
            let defect = hermiticity_defect(h);
            if defect > 1e-12 {
                return Err(Error::NotHermitian { defect });
            }
        }
        Ok(())
    }
}

/// `(v(t), U_t)`; satisfies `v(s + t) = v(s) + U_s v(t)`. The leading
/// block is where `U_t` acts as the identity.
pub fn first_order_cocycle(t: f64, params: &CocycleParams) -> Result<(CVector, CMatrix)> {
    params.validate()?;
    let mut parts: Vec<Complex64> = params.u0.iter().map(|z| z * t).collect();
    let mut unitaries = vec![CMatrix::identity(params.u0.len(), params.u0.len())];
    for (u, h) in &params.blocks {
        let ut = exp_hermitian(h, t)?;
        parts.extend((&ut * u - u).iter());
        unitaries.push(ut);
    }
    Ok((CVector::from_vec(parts), linalg::direct_sum(&unitaries)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn vec(xs: &[Complex64]) -> CVector {
        CVector::from_column_slice(xs)
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basis_size_is_stars_and_bars() {
        for d in 1..=4 {
            for n in 0..=5u32 {
                let s = FockSpace::new(d, n).unwrap();
                assert_eq!(s.len(), binomial(d + n as usize, n as usize), "d={d} N={n}");
            }
        }
        assert!(FockSpace::new(0, 3).is_err());
        let s = FockSpace::new(3, 2).unwrap();
        assert_eq!(s.occupation(0), &[0, 0, 0]);
        assert_eq!(s.occupation(1), &[1, 0, 0]);
        assert_eq!(s.index_of(&[0, 1, 1]), Some(s.len() - 2));
    }

    #[test]
    fn exponential_vector_examples() {
        let s = FockSpace::new(1, 2).unwrap();
        let e = exponential_vector(&s, &vec(&[c(1.0, 0.0)])).unwrap();
        let expected = [1.0, 1.0, 1.0 / 2f64.sqrt()];
        for (a, b) in e.amplitudes.iter().zip(expected) {
            assert!((a - c(b, 0.0)).norm() < 1e-15);
        }
        let s3 = FockSpace::new(3, 4).unwrap();
        let vac = exponential_vector(&s3, &CVector::zeros(3)).unwrap();
        assert_eq!(vac, FockState::vacuum(&s3));
    }

    #[test]
    fn exponential_kernel_single_mode() {
        let s = FockSpace::new(1, 12).unwrap();
        let u = vec(&[c(0.5, 0.0)]);
        let e = exponential_vector(&s, &u).unwrap();
        assert!((e.inner(&e) - c(0.25f64.exp(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ladder_matrix_elements() {
        let s = FockSpace::new(1, 5).unwrap();
        let ad = creation(&s, &vec(&[c(1.0, 0.0)])).unwrap();
        for n in 0..5 {
            assert!((ad.matrix[(n + 1, n)] - c(((n + 1) as f64).sqrt(), 0.0)).norm() < 1e-15);
        }
        let a = annihilation(&s, &vec(&[c(1.0, 0.0)])).unwrap();
        let out = a.apply(&FockState::vacuum(&s));
        assert_eq!(out.norm(), 0.0);
    }

    #[test]
    fn creation_is_linear_and_annihilation_antilinear() {
        let s = FockSpace::new(2, 3).unwrap();
        let u = vec(&[c(0.3, -0.1), c(0.0, 0.7)]);
        let v = vec(&[c(-1.0, 0.2), c(0.5, 0.5)]);
        let alpha = c(0.0, 2.0);
        let beta = c(1.5, -0.5);
        let lhs = creation(&s, &(&u * alpha + &v * beta)).unwrap();
        let rhs = &creation(&s, &u).unwrap().matrix * alpha + &creation(&s, &v).unwrap().matrix * beta;
        assert!(max_abs(&(lhs.matrix - rhs)) < 1e-15);
        let a = annihilation(&s, &(&u * alpha)).unwrap();
        let b = annihilation(&s, &u).unwrap().matrix * alpha.conj();
        assert!(max_abs(&(a.matrix - b)) < 1e-15);
    }

    #[test]
    fn quadrature_identities() {
        let s = FockSpace::new(2, 4).unwrap();
        let u = vec(&[c(0.4, 0.2), c(-0.3, 0.9)]);
        let (p, q) = quadratures(&s, &u).unwrap();
        let a = annihilation(&s, &u).unwrap();
        let ad = creation(&s, &u).unwrap();
        let half = c(0.5, 0.0);
        let i = c(0.0, 1.0);
        assert_eq!((&q.matrix + &p.matrix * i) * half, a.matrix);
        assert_eq!((&q.matrix - &p.matrix * i) * half, ad.matrix);
        assert!(p.hermiticity_defect() < 1e-12 && q.hermiticity_defect() < 1e-12);
        let (p_iu, _) = quadratures(&s, &(&u * i)).unwrap();
        assert!(max_abs(&(&q.matrix + &p_iu.matrix)) < 1e-15);
    }

    #[test]
    fn second_quantization_examples() {
        let s = FockSpace::new(1, 6).unwrap();
        let theta = 0.37;
        let u = CMatrix::from_element(1, 1, Complex64::from_polar(1.0, theta));
        let g = second_quantization(&s, &u).unwrap();
        for n in 0..=6 {
            assert!((g.matrix[(n, n)] - Complex64::from_polar(1.0, n as f64 * theta)).norm() < 1e-14);
        }
        let s2 = FockSpace::new(3, 3).unwrap();
        let id = second_quantization(&s2, &CMatrix::identity(3, 3)).unwrap();
        assert!(id.deviation(&FockOperator::identity(&s2)) < 1e-15);
        let bad = CMatrix::identity(3, 3) * c(2.0, 0.0);
        assert!(matches!(second_quantization(&s2, &bad), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn number_operator_from_identity() {
        let s = FockSpace::new(3, 3).unwrap();
        let n = number_conservation(&s, &CMatrix::identity(3, 3)).unwrap();
        for i in 0..s.len() {
            assert!((n.matrix[(i, i)] - c(s.total_number(i) as f64, 0.0)).norm() < 1e-14);
        }
        let out = n.apply(&FockState::vacuum(&s));
        assert_eq!(out.norm(), 0.0);
        let bad = CMatrix::from_row_slice(3, 3, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(number_conservation(&s, &bad), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn weyl_identity_and_vacuum_overlap() {
        let s = FockSpace::new(1, 12).unwrap();
        let w0 = WeylDescriptor::displacement(CVector::zeros(1));
        let id = weyl_operator(&s, &w0).unwrap();
        assert!(id.deviation(&FockOperator::identity(&s)) < 1e-15);
        let u = 0.3;
        let w = weyl_operator(&s, &WeylDescriptor::displacement(vec(&[c(u, 0.0)]))).unwrap();
        assert!((w.matrix[(0, 0)] - c((-u * u / 2.0).exp(), 0.0)).norm() < 1e-8);
    }

    #[test]
    fn descriptor_validation() {
        assert!(WeylDescriptor::new(CVector::zeros(2), CMatrix::identity(3, 3)).is_err());
        assert!(WeylDescriptor::new(CVector::zeros(2), CMatrix::identity(2, 2) * c(0.0, 2.0)).is_err());
    }

    #[test]
    fn commutation_with_identity_is_exact() {
        let s = FockSpace::new(2, 6).unwrap();
        let w1 = WeylDescriptor::displacement(vec(&[c(0.2, 0.1), c(-0.1, 0.3)]));
        let w2 = WeylDescriptor::displacement(CVector::zeros(2));
        assert!(weyl_commutation_check(&s, &w1, &w2, DEFAULT_GUARD).unwrap() < 1e-14);
    }

    #[test]
    fn first_order_cocycle_examples() {
        let h = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(-0.3, 0.0)]);
        let params = CocycleParams {
            u0: vec(&[c(0.4, 0.0), c(0.0, -0.1)]),
            blocks: vec![(vec(&[c(0.2, 0.1), c(0.0, 0.3)]), h)],
        };
        let (v0, u0) = first_order_cocycle(0.0, &params).unwrap();
        assert!(max_abs_v(&v0) == 0.0);
        assert!(max_abs(&(u0 - CMatrix::identity(4, 4))) < 1e-15);
        let t = 1.7;
        let (v, _) = first_order_cocycle(t, &params).unwrap();
        assert_eq!(v[0], params.u0[0] * t);
        assert_eq!(v[1], params.u0[1] * t);
        let mut bad = params.clone();
        bad.blocks[0].1[(0, 1)] = c(5.0, 0.0);
        assert!(matches!(first_order_cocycle(1.0, &bad), Err(Error::NotHermitian { .. })));
    }

    fn max_abs_v(v: &CVector) -> f64 {
        linalg::max_abs_vec(v)
    }

    #[test]
    fn matrix_document_round_trip() {
        let s = FockSpace::new(2, 2).unwrap();
        let a = creation(&s, &vec(&[c(0.1, 0.2), c(0.3, -0.4)])).unwrap();
        let doc = a.to_document();
        assert_eq!(doc.rows, s.len());
        let json = serde_json::to_string(&doc).unwrap();
        let back: MatrixDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), a.matrix);
    }
}
