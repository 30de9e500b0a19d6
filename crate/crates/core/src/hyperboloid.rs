//! The forward mass hyperboloid, its invariant measure, and square-integrable
//! sections of the spinor bundle over it.
//!
//! A [`MomentumGrid`] is a finite quadrature set: on-shell points together
//! with weights approximating `dp/p0`. Group elements act on grids by moving
//! the points and keeping the weights (the measure is invariant), so every
//! group identity is exact at finite resolution.

use std::sync::Arc;

use nalgebra::{Vector2, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirac::{self, ONE, ZERO};
use crate::error::{Error, Result};
use crate::lorentz::{FourVector, LorentzTransform};
use crate::tolerance;

pub use crate::dirac::gamma_matrices;

/// Density of the quadrature measure relative to `dp/p0`.
///
/// Anything other than [`Density::Invariant`] gives a quasi-invariant
/// measure and a nontrivial Radon–Nikodym factor under boosts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Density {
    #[default]
    Invariant,
    /// `exp(-beta p0)`
    EnergyExponential { beta: f64 },
}

impl Density {
    pub fn eval(&self, p: &FourVector) -> f64 {
        match *self {
            Density::Invariant => 1.0,
            Density::EnergyExponential { beta } => (-beta * p.p0).exp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGrid {
    mass: f64,
    tol: f64,
    points: Vec<FourVector>,
    weights: Vec<f64>,
    density: Density,
}

impl MomentumGrid {
    /// Validates that every point is on the forward hyperboloid and every
    /// weight positive.
    pub fn new(mass: f64, points: Vec<FourVector>, weights: Vec<f64>, tol: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::NonPositiveMass { mass });
        }
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                actual: weights.len(),
            });
        }
        for p in &points {
            let residual = p.shell_residual(mass);
            if residual >= tol || p.p0 <= 0.0 || !p.is_finite() {
                return Err(Error::OffShell { residual });
            }
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("weights must be positive, found {w}"),
            });
        }
        Ok(Self {
            mass,
            tol,
            points,
            weights,
            density: Density::Invariant,
        })
    }

    pub fn with_density(mut self, density: Density) -> Self {
        self.density = density;
        self
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn points(&self) -> &[FourVector] {
        &self.points
    }

    /// Invariant-measure weights, carrying the `1/p0` factor.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn density(&self) -> Density {
        self.density
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Weight of point `i` under the grid's measure (invariant weight times
    /// density).
    pub fn quadrature_weight(&self, i: usize) -> f64 {
        self.weights[i] * self.density.eval(&self.points[i])
    }

    pub fn total_weight(&self) -> f64 {
        (0..self.len()).map(|i| self.quadrature_weight(i)).sum()
    }

    /// Index of the grid point within `tol` of `p` (max-norm), if any.
    pub fn find(&self, p: &FourVector, tol: f64) -> Option<usize> {
        self.points.iter().position(|q| (*q - *p).max_abs() <= tol)
    }

    /// Largest pointwise distance to another grid with the same layout.
    pub fn point_deviation(&self, other: &MomentumGrid) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        Some(
            self.points
                .iter()
                .zip(&other.points)
                .map(|(a, b)| (*a - *b).max_abs())
                .fold(0.0, f64::max),
        )
    }
}

/// Tensor-product midpoint grid over `[-extent, extent]^3` in spatial
/// momentum, lifted onto the hyperboloid; each weight is `cell volume / p0`.
pub fn build_grid(mass: f64, spatial_extent: f64, n_per_axis: usize) -> Result<MomentumGrid> {
    if !(mass > 0.0) {
        return Err(Error::NonPositiveMass { mass });
    }
    if !(spatial_extent > 0.0) {
        return Err(Error::InvalidParameter {
            name: "spatial_extent",
            reason: format!("must be positive, got {spatial_extent}"),
        });
    }
    if n_per_axis == 0 {
        return Err(Error::InvalidParameter {
            name: "n_per_axis",
            reason: "must be at least 1".into(),
        });
    }
    let h = 2.0 * spatial_extent / n_per_axis as f64;
    let cell = h * h * h;
    let coord = |i: usize| -spatial_extent + (i as f64 + 0.5) * h;
    let n = n_per_axis;
    let mut points = Vec::with_capacity(n * n * n);
    let mut weights = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let p = FourVector::on_shell(mass, [coord(i), coord(j), coord(k)]);
                weights.push(cell / p.p0);
                points.push(p);
            }
        }
    }
    MomentumGrid::new(mass, points, weights, tolerance::ON_SHELL)
}

/// Closes `seeds` (spatial momenta) under the given transforms and their
/// inverses. Every orbit point inherits the weight of its seed. Fails when
/// the orbit grows past `max_points`.
pub fn build_orbit_grid(
    mass: f64,
    seeds: &[[f64; 3]],
    seed_weight: f64,
    transforms: &[LorentzTransform],
    max_points: usize,
) -> Result<MomentumGrid> {
    let mut points: Vec<FourVector> = Vec::new();
    let mut frontier: Vec<FourVector> = Vec::new();
    for q in seeds {
        let p = FourVector::on_shell(mass, *q);
        if !points.iter().any(|x| (*x - p).max_abs() <= tolerance::GRID_MATCH) {
            points.push(p);
            frontier.push(p);
        }
    }
    let moves: Vec<LorentzTransform> = transforms
        .iter()
        .flat_map(|t| [t.clone(), t.inverse()])
        .collect();
    while let Some(p) = frontier.pop() {
        for t in &moves {
            let mut q = t.apply(&p);
            // re-project onto the shell to stop drift along long orbits
            q = FourVector::on_shell(mass, q.spatial());
            if !points.iter().any(|x| (*x - q).max_abs() <= tolerance::GRID_MATCH) {
                if points.len() >= max_points {
                    return Err(Error::InvalidParameter {
                        name: "grid.seeds",
                        reason: format!("orbit exceeds {max_points} points; generators do not close on the seeds"),
                    });
                }
                points.push(q);
                frontier.push(q);
            }
        }
    }
    let weights = points.iter().map(|_| seed_weight).collect();
    MomentumGrid::new(mass, points, weights, tolerance::ON_SHELL)
}

/// Moves every point by `g` and keeps the weights.
pub fn transport_grid(g: &LorentzTransform, grid: &MomentumGrid) -> MomentumGrid {
    MomentumGrid {
        mass: grid.mass,
        tol: grid.tol,
        points: grid.points.iter().map(|p| g.apply(p)).collect(),
        weights: grid.weights.clone(),
        density: grid.density,
    }
}

/// Orthonormal basis of the `+m` eigenspace of `Σ p_k γ_k` at one momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberBasis {
    pub momentum: FourVector,
    pub basis: [Vector4<Complex64>; 2],
}

impl FiberBasis {
    /// The fiber vector with coordinates `c` in this basis.
    pub fn embed(&self, c: &Vector2<Complex64>) -> Vector4<Complex64> {
        self.basis[0] * c[0] + self.basis[1] * c[1]
    }

    /// Coordinates of `v` (assumed to lie in the fiber).
    pub fn coordinates(&self, v: &Vector4<Complex64>) -> Vector2<Complex64> {
        Vector2::new(self.basis[0].dotc(v), self.basis[1].dotc(v))
    }
}

/// Boosted rest spinors `((E+m)χ, (σ·q)χ) / sqrt(2E(E+m))` for `χ = e1, e2`.
///
/// These are `sqrt(m/E) S(L(p)) χ`, so the basis is Hermitian-orthonormal
/// and reduces to the two upper components at rest.
pub fn fiber_basis(p: &FourVector, mass: f64) -> Result<FiberBasis> {
    if !(mass > 0.0) {
        return Err(Error::NonPositiveMass { mass });
    }
    let residual = p.shell_residual(mass);
    if residual > tolerance::ON_SHELL || p.p0 <= 0.0 {
        return Err(Error::OffShell { residual });
    }
    let e = p.p0;
    let norm = Complex64::new(1.0 / (2.0 * e * (e + mass)).sqrt(), 0.0);
    let s = dirac::pauli();
    let q = p.spatial();
    let sq = s[0] * Complex64::new(q[0], 0.0)
        + s[1] * Complex64::new(q[1], 0.0)
        + s[2] * Complex64::new(q[2], 0.0);
    let column = |chi: Vector2<Complex64>| {
        let lower = sq * chi;
        let upper = chi * Complex64::new(e + mass, 0.0);
        Vector4::new(upper[0], upper[1], lower[0], lower[1]) * norm
    };
    Ok(FiberBasis {
        momentum: *p,
        basis: [column(Vector2::new(ONE, ZERO)), column(Vector2::new(ZERO, ONE))],
    })
}

/// Fiber coefficients (in the local [`FiberBasis`]) at every grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedSection {
    grid: Arc<MomentumGrid>,
    values: Vec<Vector2<Complex64>>,
}

impl FiberedSection {
    pub fn new(grid: Arc<MomentumGrid>, values: Vec<Vector2<Complex64>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<MomentumGrid>) -> Self {
        let values = vec![Vector2::zeros(); grid.len()];
        Self { grid, values }
    }

    pub fn from_fn(grid: Arc<MomentumGrid>, mut f: impl FnMut(usize, &FourVector) -> Vector2<Complex64>) -> Self {
        let values = grid.points().iter().enumerate().map(|(i, p)| f(i, p)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Vector2<Complex64>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Vector2<Complex64>] {
        &mut self.values
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.quadrature_weight(i) * v.norm_squared())
            .sum()
    }

    /// Coefficients in the orthonormal basis `e_{i,b} / sqrt(w_i)`, so the
    /// section inner product becomes the standard one on `C^{2n}`.
    pub fn flatten(&self) -> Vec<Complex64> {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(i, v)| {
                let s = self.grid.quadrature_weight(i).sqrt();
                [v[0] * s, v[1] * s]
            })
            .collect()
    }

    pub fn unflatten(grid: Arc<MomentumGrid>, flat: &[Complex64]) -> Result<Self> {
        if flat.len() != 2 * grid.len() {
            return Err(Error::DimensionMismatch {
                expected: 2 * grid.len(),
                actual: flat.len(),
            });
        }
        let values = (0..grid.len())
            .map(|i| {
                let s = 1.0 / grid.quadrature_weight(i).sqrt();
                Vector2::new(flat[2 * i] * s, flat[2 * i + 1] * s)
            })
            .collect();
        Ok(Self { grid, values })
    }

    /// The section as a `C^4` vector at grid point `i`.
    pub fn spinor_at(&self, i: usize) -> Result<Vector4<Complex64>> {
        let b = fiber_basis(&self.grid.points()[i], self.grid.mass())?;
        Ok(b.embed(&self.values[i]))
    }
}

fn same_grid(a: &Arc<MomentumGrid>, b: &Arc<MomentumGrid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `Σ_p w(p) <φ(p), ψ(p)>`, antilinear in the first argument. The weights
/// already contain the `1/p0` of the invariant measure.
pub fn section_inner(phi: &FiberedSection, psi: &FiberedSection) -> Result<Complex64> {
    if !same_grid(&phi.grid, &psi.grid) {
        return Err(Error::GridMismatch);
    }
    Ok(phi
        .values
        .iter()
        .zip(&psi.values)
        .enumerate()
        .map(|(i, (a, b))| a.dotc(b) * phi.grid.quadrature_weight(i))
        .sum())
}

/// Norm of `φ - ψ` for sections whose grids agree pointwise within
/// [`tolerance::GRID_MATCH`] (e.g. reached by different transport paths).
pub fn section_distance(phi: &FiberedSection, psi: &FiberedSection) -> Result<f64> {
    match phi.grid.point_deviation(&psi.grid) {
        Some(d) if d <= tolerance::GRID_MATCH => {}
        _ => return Err(Error::GridMismatch),
    }
    Ok(phi
        .values
        .iter()
        .zip(&psi.values)
        .enumerate()
        .map(|(i, (a, b))| phi.grid.quadrature_weight(i) * (a - b).norm_squared())
        .sum::<f64>()
        .sqrt())
}

/// JSON document for grids and sections. `values` holds two `[re, im]`
/// pairs per point (empty for a bare grid); `weights` are the quadrature
/// weights of the grid's measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionDocument {
    pub mass: f64,
    pub points: Vec<[f64; 4]>,
    pub weights: Vec<f64>,
    pub values: Vec<[f64; 2]>,
}

impl SectionDocument {
    pub fn from_grid(grid: &MomentumGrid) -> Self {
        Self {
            mass: grid.mass(),
            points: grid.points().iter().map(FourVector::to_array).collect(),
            weights: (0..grid.len()).map(|i| grid.quadrature_weight(i)).collect(),
            values: Vec::new(),
        }
    }

    pub fn from_section(section: &FiberedSection) -> Self {
        let mut doc = Self::from_grid(section.grid());
        doc.values = section
            .values()
            .iter()
            .flat_map(|v| [[v[0].re, v[0].im], [v[1].re, v[1].im]])
            .collect();
        doc
    }

    pub fn grid(&self) -> Result<MomentumGrid> {
        let points = self.points.iter().copied().map(FourVector::from_array).collect();
        MomentumGrid::new(self.mass, points, self.weights.clone(), tolerance::ON_SHELL)
    }

    /// Rebuilds the section; a document without values yields the zero section.
    pub fn section(&self) -> Result<FiberedSection> {
        let grid = Arc::new(self.grid()?);
        if self.values.is_empty() {
            return Ok(FiberedSection::zeros(grid));
        }
        if self.values.len() != 2 * grid.len() {
            return Err(Error::DimensionMismatch {
                expected: 2 * grid.len(),
                actual: self.values.len(),
            });
        }
        let values = self
            .values
            .chunks(2)
            .map(|c| Vector2::new(Complex64::new(c[0][0], c[0][1]), Complex64::new(c[1][0], c[1][1])))
            .collect();
        FiberedSection::new(grid, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{boost, minkowski_inner, rotation};
    use nalgebra::Matrix4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_cell_grid() {
        let eps = 1e-3;
        let g = build_grid(2.0, eps, 1).unwrap();
        assert_eq!(g.len(), 1);
        let p = g.points()[0];
        assert_eq!(p, FourVector::rest(2.0));
        assert_eq!(g.weights()[0], (2.0 * eps).powi(3) / 2.0);
    }

    #[test]
    fn weights_are_cell_volume_over_energy() {
        let g = build_grid(1.0, 1.5, 4).unwrap();
        let cell = (3.0f64 / 4.0).powi(3);
        for (p, w) in g.points().iter().zip(g.weights()) {
            assert!(*w > 0.0);
            assert!((w - cell / p.p0).abs() < 1e-15);
            assert!(p.shell_residual(1.0) < 1e-12);
        }
    }

    #[test]
    fn grid_parameters_are_validated() {
        assert!(build_grid(0.0, 1.0, 2).is_err());
        assert!(build_grid(1.0, -1.0, 2).is_err());
        assert!(build_grid(1.0, 1.0, 0).is_err());
        assert!(MomentumGrid::new(1.0, vec![FourVector::rest(2.0)], vec![1.0], 1e-9).is_err());
        assert!(MomentumGrid::new(1.0, vec![FourVector::rest(1.0)], vec![0.0], 1e-9).is_err());
    }

    #[test]
    fn fiber_at_rest_is_upper_components() {
        let b = fiber_basis(&FourVector::rest(1.5), 1.5).unwrap();
        assert_eq!(b.basis[0], Vector4::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));
        assert_eq!(b.basis[1], Vector4::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn fiber_basis_solves_constraint_and_is_orthonormal() {
        let m = 0.8;
        let p = FourVector::on_shell(m, [0.7, -1.2, 0.4]);
        let b = fiber_basis(&p, m).unwrap();
        let slash = dirac::slash(&p);
        for v in &b.basis {
            let r = slash * v - v * c(m, 0.0);
            assert!(r.norm() < 1e-10);
        }
        assert!((b.basis[0].dotc(&b.basis[0]) - 1.0).norm() < 1e-12);
        assert!((b.basis[1].dotc(&b.basis[1]) - 1.0).norm() < 1e-12);
        assert!(b.basis[0].dotc(&b.basis[1]).norm() < 1e-12);
        let proj = (slash + Matrix4::identity() * c(m, 0.0)) * c(0.5 / m, 0.0);
        assert!((proj.trace() - 2.0).norm() < 1e-10);
    }

    #[test]
    fn fiber_basis_is_boosted_rest_basis() {
        let m = 1.0;
        let p = FourVector::on_shell(m, [0.3, 0.2, -0.5]);
        let l = crate::lorentz::standard_boost(&p, m).unwrap();
        let b = fiber_basis(&p, m).unwrap();
        let scale = c((m / p.p0).sqrt(), 0.0);
        let rest = fiber_basis(&FourVector::rest(m), m).unwrap();
        for k in 0..2 {
            let boosted = l.spinor() * rest.basis[k] * scale;
            assert!((boosted - b.basis[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn fiber_basis_rejects_off_shell() {
        assert!(matches!(
            fiber_basis(&FourVector::new(1.0, 1.0, 0.0, 0.0), 1.0),
            Err(Error::OffShell { .. })
        ));
    }

    #[test]
    fn inner_product_basics() {
        let grid = Arc::new(build_grid(1.0, 0.01, 1).unwrap());
        let w = grid.weights()[0];
        let unit = FiberedSection::new(grid.clone(), vec![Vector2::new(c(1.0, 0.0), c(0.0, 0.0))]).unwrap();
        assert!((section_inner(&unit, &unit).unwrap() - w).norm() < 1e-18);
        let zero = FiberedSection::zeros(grid);
        assert_eq!(section_inner(&zero, &zero).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_on_mismatched_grids_fails() {
        let a = FiberedSection::zeros(Arc::new(build_grid(1.0, 1.0, 2).unwrap()));
        let b = FiberedSection::zeros(Arc::new(build_grid(1.0, 1.0, 3).unwrap()));
        assert_eq!(section_inner(&a, &b), Err(Error::GridMismatch));
    }

    #[test]
    fn transport_identity_and_shell() {
        let grid = build_grid(1.0, 1.0, 3).unwrap();
        assert_eq!(transport_grid(&LorentzTransform::identity(), &grid), grid);
        let g = boost([0.0, 1.0, 0.0], 0.7)
            .unwrap()
            .compose(&rotation([1.0, 0.0, 0.0], 0.4).unwrap());
        let moved = transport_grid(&g, &grid);
        assert_eq!(moved.weights(), grid.weights());
        for p in moved.points() {
            assert!((minkowski_inner(p, p) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn orbit_grid_closes_under_half_turn_and_z_rotation() {
        let rz = rotation([0.0, 0.0, 1.0], std::f64::consts::PI / 7.0).unwrap();
        let rx = rotation([1.0, 0.0, 0.0], std::f64::consts::PI).unwrap();
        let g = build_orbit_grid(1.0, &[[0.0, 0.0, 0.0], [0.0, 0.0, 0.5]], 0.1, &[rz, rx], 16).unwrap();
        assert_eq!(g.len(), 3);
        let ry = rotation([0.0, 1.0, 0.0], 0.3).unwrap();
        assert!(build_orbit_grid(1.0, &[[0.0, 0.0, 0.5]], 0.1, &[ry], 64).is_err());
    }

    #[test]
    fn flatten_round_trip_preserves_inner_product() {
        let grid = Arc::new(build_grid(1.0, 1.0, 2).unwrap().with_density(Density::EnergyExponential { beta: 0.5 }));
        let s = FiberedSection::from_fn(grid.clone(), |i, _| Vector2::new(c(i as f64, 1.0), c(-1.0, 0.5 * i as f64)));
        let flat = s.flatten();
        let n: f64 = flat.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - s.norm_sq()).abs() < 1e-12);
        let back = FiberedSection::unflatten(grid, &flat).unwrap();
        assert!(section_distance(&s, &back).unwrap() < 1e-12);
    }

    #[test]
    fn document_round_trip() {
        let grid = Arc::new(build_grid(1.3, 0.8, 2).unwrap());
        let s = FiberedSection::from_fn(grid, |i, p| Vector2::new(c(p.p1, i as f64), c(0.0, -p.p3)));
        let doc = SectionDocument::from_section(&s);
        let parsed = SectionDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        let back = parsed.section().unwrap();
        assert_eq!(back.values(), s.values());
        assert!(SectionDocument::from_json("{\"mass\": 1}").is_err());
    }
}
