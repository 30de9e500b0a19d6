//! Strict cocycles from a little-group homomorphism and the induced
//! system of imprimitivity `(U, P)` on fibered sections.
//!
//! The boost section `c(p) = L(p)` picks, for every group element `g` and
//! momentum `p`, the little-group element `L(gp)^{-1} g L(p)`. Feeding it
//! through a representation of the stabilizer gives the cocycle
//! `φ(g, p)`, and
//!
//! ```text
//! (U_g f)(gp) = sqrt(r_g(p)) φ(g, p) f(p),      (P_E f)(p) = χ_E(p) f(p)
//! ```
//!
//! with `r_g(p) = ρ(p) / ρ(gp)` the Radon–Nikodym factor of the grid density.

use std::sync::Arc;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperboloid::{fiber_basis, section_distance, transport_grid, FiberBasis, FiberedSection};
use crate::lorentz::{minkowski_inner, standard_boost, wigner_rotation, FourVector, LorentzTransform, PoincareElement};
use crate::tolerance;

/// A representation of the stabilizer of `(m,0,0,0)` on the 2-dim fiber.
pub trait LittleGroupRep: Send + Sync {
    fn evaluate(&self, h: &LorentzTransform) -> Result<Matrix2<Complex64>>;
}

/// Action of a stabilizer element on the `+m` eigenspace at rest, in the
/// coordinates of `spin_basis`.
///
/// The action is read off the spinor factor of `h`, so words that close to
/// a 2π rotation give `-I`.
pub fn little_group_rep(h: &LorentzTransform, spin_basis: &FiberBasis) -> Result<Matrix2<Complex64>> {
    let mass = spin_basis.momentum.p0;
    let deviation = h
        .stabilizer_defect(mass)
        .max((spin_basis.momentum - FourVector::rest(mass)).max_abs());
    if deviation > tolerance::LINALG {
        return Err(Error::NotStabilizer { deviation });
    }
    let s = h.spinor();
    let mut m = Matrix2::zeros();
    for i in 0..2 {
        let image = s * spin_basis.basis[i];
        for j in 0..2 {
            m[(j, i)] = spin_basis.basis[j].dotc(&image);
        }
    }
    Ok(m)
}

/// Spin-½ block of the Dirac representation restricted to rotations.
#[derive(Clone, Debug)]
pub struct SpinorRep {
    basis: FiberBasis,
}

impl SpinorRep {
    pub fn new(mass: f64) -> Result<Self> {
        Ok(Self {
            basis: fiber_basis(&FourVector::rest(mass), mass)?,
        })
    }

    pub fn basis(&self) -> &FiberBasis {
        &self.basis
    }
}

impl LittleGroupRep for SpinorRep {
    fn evaluate(&self, h: &LorentzTransform) -> Result<Matrix2<Complex64>> {
        little_group_rep(h, &self.basis)
    }
}

/// The trivial representation (identity on the fiber).
#[derive(Clone, Debug)]
pub struct TrivialRep {
    pub mass: f64,
}

impl LittleGroupRep for TrivialRep {
    fn evaluate(&self, h: &LorentzTransform) -> Result<Matrix2<Complex64>> {
        let deviation = h.stabilizer_defect(self.mass);
        if deviation > tolerance::LINALG {
            return Err(Error::NotStabilizer { deviation });
        }
        Ok(Matrix2::identity())
    }
}

/// Boost section `c(p) = L(p)` of the Lorentz group over the hyperboloid,
/// with `c(m,0,0,0) = e`.
pub fn borel_section(p: &FourVector, mass: f64) -> Result<LorentzTransform> {
    standard_boost(p, mass)
}

/// `φ(g, p) = m(L(gp)^{-1} g L(p))`.
#[derive(Clone)]
pub struct UnitaryCocycle {
    mass: f64,
    rep: Arc<dyn LittleGroupRep>,
}

impl std::fmt::Debug for UnitaryCocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitaryCocycle").field("mass", &self.mass).finish_non_exhaustive()
    }
}

impl UnitaryCocycle {
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn base_point(&self) -> FourVector {
        FourVector::rest(self.mass)
    }

    /// The identity element maps to `I` exactly, as the cocycle
    /// normalization requires; everything else goes through the Wigner
    /// rotation.
    pub fn evaluate(&self, g: &LorentzTransform, p: &FourVector) -> Result<Matrix2<Complex64>> {
        let e = LorentzTransform::identity();
        if g.matrix() == e.matrix() && g.spinor() == e.spinor() {
            return Ok(Matrix2::identity());
        }
        let h = wigner_rotation(g, p, self.mass)?;
        self.rep.evaluate(&h)
    }
}

pub fn cocycle_from_homomorphism(mass: f64, rep: Arc<dyn LittleGroupRep>) -> UnitaryCocycle {
    UnitaryCocycle { mass, rep }
}

/// Regions of momentum space whose images under a Lorentz transform are
/// again regions of the same shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Region {
    All,
    Empty,
    /// `normal · p >= offset`
    HalfSpace { normal: FourVector, offset: f64 },
    /// `center · p <= bound`: a geodesic ball on the hyperboloid
    Ball { center: FourVector, bound: f64 },
    Intersection(Vec<Region>),
}

impl Region {
    /// `n · q >= offset` in spatial momentum, `n` a unit 3-vector.
    pub fn spatial_half_space(direction: [f64; 3], offset: f64) -> Region {
        Region::HalfSpace {
            normal: FourVector::new(0.0, -direction[0], -direction[1], -direction[2]),
            offset,
        }
    }

    /// Hyperbolic ball around `center` whose radius equals a spatial radius
    /// `r` when the center is at rest.
    pub fn spatial_ball(mass: f64, center: [f64; 3], radius: f64) -> Region {
        Region::Ball {
            center: FourVector::on_shell(mass, center),
            bound: mass * (mass * mass + radius * radius).sqrt(),
        }
    }

    /// Axis-aligned box `lo <= q <= hi` as six half-spaces.
    pub fn spatial_box(lo: [f64; 3], hi: [f64; 3]) -> Region {
        let mut parts = Vec::with_capacity(6);
        for k in 0..3 {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            parts.push(Region::spatial_half_space(e, lo[k]));
            e[k] = -1.0;
            parts.push(Region::spatial_half_space(e, -hi[k]));
        }
        Region::Intersection(parts)
    }

    pub fn contains(&self, p: &FourVector) -> bool {
        match self {
            Region::All => true,
            Region::Empty => false,
            Region::HalfSpace { normal, offset } => minkowski_inner(normal, p) >= *offset,
            Region::Ball { center, bound } => minkowski_inner(center, p) <= *bound,
            Region::Intersection(parts) => parts.iter().all(|r| r.contains(p)),
        }
    }

    /// `g·E = { gp : p ∈ E }`.
    pub fn transformed(&self, g: &LorentzTransform) -> Region {
        match self {
            Region::All => Region::All,
            Region::Empty => Region::Empty,
            Region::HalfSpace { normal, offset } => Region::HalfSpace {
                normal: g.apply(normal),
                offset: *offset,
            },
            Region::Ball { center, bound } => Region::Ball {
                center: g.apply(center),
                bound: *bound,
            },
            Region::Intersection(parts) => Region::Intersection(parts.iter().map(|r| r.transformed(g)).collect()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Region::All => "all",
            Region::Empty => "empty",
            Region::HalfSpace { .. } => "half_space",
            Region::Ball { .. } => "ball",
            Region::Intersection(_) => "box",
        }
    }
}

/// The pair `(U, P)` induced by a cocycle.
#[derive(Clone, Debug)]
pub struct ImprimitivitySystem {
    cocycle: UnitaryCocycle,
}

impl ImprimitivitySystem {
    pub fn new(cocycle: UnitaryCocycle) -> Self {
        Self { cocycle }
    }

    /// Induced from the spin-½ block at rest.
    pub fn spinor(mass: f64) -> Result<Self> {
        Ok(Self::new(cocycle_from_homomorphism(mass, Arc::new(SpinorRep::new(mass)?))))
    }

    pub fn cocycle(&self) -> &UnitaryCocycle {
        &self.cocycle
    }

    /// `r_g(p) = ρ(p) / ρ(gp)` for the grid's density `ρ` relative to `dp/p0`.
    pub fn radon_nikodym(&self, g: &LorentzTransform, p: &FourVector, section: &FiberedSection) -> f64 {
        let density = section.grid().density();
        density.eval(p) / density.eval(&g.apply(p))
    }

    pub fn apply_u(&self, g: &LorentzTransform, phi: &FiberedSection) -> Result<FiberedSection> {
        if (phi.grid().mass() - self.cocycle.mass).abs() > tolerance::METRIC {
            return Err(Error::GridMismatch);
        }
        let grid = Arc::new(transport_grid(g, phi.grid()));
        let values = phi
            .grid()
            .points()
            .iter()
            .zip(phi.values())
            .map(|(p, v)| {
                let r = self.radon_nikodym(g, p, phi);
                Ok(self.cocycle.evaluate(g, p)? * v * Complex64::new(r.sqrt(), 0.0))
            })
            .collect::<Result<Vec<_>>>()?;
        FiberedSection::new(grid, values)
    }

    pub fn apply_p(&self, region: &Region, phi: &FiberedSection) -> FiberedSection {
        apply_p(region, phi)
    }

    /// Multiplication by `e^{i{k,a}}`, the translation part of the
    /// Poincaré action.
    pub fn apply_translation(&self, a: &FourVector, phi: &FiberedSection) -> FiberedSection {
        FiberedSection::from_fn(phi.grid().clone(), |i, k| {
            phi.values()[i] * Complex64::from_polar(1.0, minkowski_inner(k, a))
        })
    }

    /// `U_(Λ,a) = T_a U_Λ`.
    pub fn apply_poincare(&self, g: &PoincareElement, phi: &FiberedSection) -> Result<FiberedSection> {
        let moved = self.apply_u(&g.lorentz, phi)?;
        Ok(self.apply_translation(&g.translation, &moved))
    }
}

/// `χ_E f`
pub fn apply_p(region: &Region, phi: &FiberedSection) -> FiberedSection {
    FiberedSection::from_fn(phi.grid().clone(), |i, p| {
        if region.contains(p) {
            phi.values()[i]
        } else {
            Vector2::zeros()
        }
    })
}

/// `‖U_g P_E U_g^{-1} φ - P_{gE} φ‖`.
pub fn verify_imprimitivity(
    sys: &ImprimitivitySystem,
    g: &LorentzTransform,
    region: &Region,
    phi: &FiberedSection,
) -> Result<f64> {
    let pulled = sys.apply_u(&g.inverse(), phi)?;
    let lhs = sys.apply_u(g, &apply_p(region, &pulled))?;
    let rhs = apply_p(&region.transformed(g), phi);
    section_distance(&lhs, &rhs)
}

/// `c(q) c(p)^{-1}`, which maps `p` to `q`.
pub fn transitivity_witness(p: &FourVector, q: &FourVector, mass: f64) -> Result<LorentzTransform> {
    Ok(borel_section(q, mass)?.compose(&borel_section(p, mass)?.inverse()))
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check: String,
    pub g_word: String,
    pub region: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationRecord {
    pub fn new(check: impl Into<String>, g_word: impl Into<String>, region: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            g_word: g_word.into(),
            region: region.into(),
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperboloid::{build_grid, section_inner, Density};
    use crate::lorentz::{boost, rotation};
    use std::f64::consts::PI;

    fn max_abs(m: &Matrix2<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn sample_section(n: usize, density: Density) -> FiberedSection {
        let grid = Arc::new(build_grid(1.0, 1.0, n).unwrap().with_density(density));
        FiberedSection::from_fn(grid, |i, p| {
            let t = i as f64;
            Vector2::new(
                Complex64::new((1.3 * t).sin() + p.p1, (0.7 * t).cos()),
                Complex64::new(p.p2 - 0.4, (2.1 * t).sin() * p.p3),
            )
        })
    }

    #[test]
    fn spinor_rep_identity_and_full_turn() {
        let rep = SpinorRep::new(1.0).unwrap();
        let id = rep.evaluate(&LorentzTransform::identity()).unwrap();
        assert!(max_abs(&(id - Matrix2::identity())) < 1e-15);
        let turn = rotation([0.0, 0.0, 1.0], 2.0 * PI).unwrap();
        let m = rep.evaluate(&turn).unwrap();
        assert!(max_abs(&(m + Matrix2::identity())) < 1e-14);
    }

    #[test]
    fn spinor_rep_is_homomorphism() {
        let rep = SpinorRep::new(2.0).unwrap();
        let a = rotation([0.0, 0.6, 0.8], 0.9).unwrap();
        let b = rotation([1.0, 0.0, 0.0], -2.3).unwrap();
        let lhs = rep.evaluate(&a.compose(&b)).unwrap();
        let rhs = rep.evaluate(&a).unwrap() * rep.evaluate(&b).unwrap();
        assert!(max_abs(&(lhs - rhs)) < 1e-12);
        assert!(max_abs(&(lhs.adjoint() * lhs - Matrix2::identity())) < 1e-12);
    }

    #[test]
    fn little_group_rep_rejects_boosts() {
        let rep = SpinorRep::new(1.0).unwrap();
        assert!(matches!(
            rep.evaluate(&boost([1.0, 0.0, 0.0], 0.2).unwrap()),
            Err(Error::NotStabilizer { .. })
        ));
        let trivial = TrivialRep { mass: 1.0 };
        assert!(trivial.evaluate(&boost([1.0, 0.0, 0.0], 0.2).unwrap()).is_err());
    }

    #[test]
    fn section_examples() {
        let m = 1.4;
        let base = FourVector::rest(m);
        assert!(borel_section(&base, m).unwrap().deviation(&LorentzTransform::identity()) < 1e-15);
        let p = FourVector::on_shell(m, [0.2, 0.1, -0.3]);
        let q = FourVector::on_shell(m, [0.2, 0.1, 0.3]);
        let cp = borel_section(&p, m).unwrap();
        assert!((cp.apply(&base) - p).max_abs() < 1e-10);
        assert!(cp.deviation(&borel_section(&q, m).unwrap()) > 1e-3);
    }

    #[test]
    fn cocycle_restricts_to_homomorphism_at_base() {
        let m = 1.0;
        let rep = Arc::new(SpinorRep::new(m).unwrap());
        let cocycle = cocycle_from_homomorphism(m, rep.clone());
        let h = rotation([0.0, 0.0, 1.0], 0.77).unwrap();
        let lhs = cocycle.evaluate(&h, &FourVector::rest(m)).unwrap();
        assert!(max_abs(&(lhs - rep.evaluate(&h).unwrap())) < 1e-12);
        let e = cocycle.evaluate(&LorentzTransform::identity(), &FourVector::on_shell(m, [0.5, 0.5, 0.5])).unwrap();
        assert!(max_abs(&(e - Matrix2::identity())) < 1e-12);
    }

    #[test]
    fn identity_and_projection_edge_cases() {
        let sys = ImprimitivitySystem::spinor(1.0).unwrap();
        let phi = sample_section(3, Density::Invariant);
        let same = sys.apply_u(&LorentzTransform::identity(), &phi).unwrap();
        assert!(section_distance(&same, &phi).unwrap() < 1e-15);
        assert_eq!(apply_p(&Region::All, &phi), phi);
        assert_eq!(apply_p(&Region::Empty, &phi).norm(), 0.0);
        let e = Region::spatial_half_space([0.6, 0.8, 0.0], 0.1);
        let once = apply_p(&e, &phi);
        assert_eq!(apply_p(&e, &once), once);
    }

    #[test]
    fn projection_is_self_adjoint() {
        let phi = sample_section(3, Density::Invariant);
        let psi = FiberedSection::from_fn(phi.grid().clone(), |i, _| {
            Vector2::new(Complex64::new(0.0, i as f64), Complex64::new(1.0, -1.0))
        });
        let e = Region::spatial_ball(1.0, [0.1, 0.0, 0.0], 0.8);
        let a = section_inner(&apply_p(&e, &phi), &psi).unwrap();
        let b = section_inner(&phi, &apply_p(&e, &psi)).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn radon_nikodym_keeps_weighted_grid_unitary() {
        let sys = ImprimitivitySystem::spinor(1.0).unwrap();
        let phi = sample_section(3, Density::EnergyExponential { beta: 0.8 });
        let g = boost([0.0, 0.6, 0.8], 0.5).unwrap();
        let out = sys.apply_u(&g, &phi).unwrap();
        assert!((out.norm() - phi.norm()).abs() < 1e-12);
        // dropping the factor breaks unitarity on a non-invariant measure
        assert!(sys.radon_nikodym(&g, &phi.grid().points()[0], &phi) != 1.0);
    }

    #[test]
    fn translations_commute_with_projections() {
        let sys = ImprimitivitySystem::spinor(1.0).unwrap();
        let phi = sample_section(3, Density::Invariant);
        let a = FourVector::new(0.3, -1.0, 0.2, 0.5);
        let e = Region::spatial_box([-0.5, -1.0, 0.0], [0.5, 1.0, 1.0]);
        let lhs = sys.apply_translation(&a, &apply_p(&e, &phi));
        let rhs = apply_p(&e, &sys.apply_translation(&a, &phi));
        assert!(section_distance(&lhs, &rhs).unwrap() < 1e-15);
    }

    #[test]
    fn poincare_action_is_a_representation() {
        let sys = ImprimitivitySystem::spinor(1.0).unwrap();
        let phi = sample_section(2, Density::Invariant);
        let g1 = PoincareElement::new(boost([1.0, 0.0, 0.0], 0.4).unwrap(), FourVector::new(0.2, 0.1, 0.0, -0.3));
        let g2 = PoincareElement::new(rotation([0.0, 1.0, 0.0], 1.2).unwrap(), FourVector::new(-0.5, 0.0, 0.7, 0.1));
        let lhs = sys.apply_poincare(&g1, &sys.apply_poincare(&g2, &phi).unwrap()).unwrap();
        let rhs = sys.apply_poincare(&g1.compose(&g2), &phi).unwrap();
        assert!(section_distance(&lhs, &rhs).unwrap() < 1e-10);
    }

    #[test]
    fn transitivity_witness_maps_points() {
        let m = 1.0;
        let p = FourVector::on_shell(m, [0.4, -0.3, 0.9]);
        let q = FourVector::on_shell(m, [-1.0, 0.2, 0.0]);
        let g = transitivity_witness(&p, &q, m).unwrap();
        assert!((g.apply(&p) - q).max_abs() < 1e-9);
    }

    #[test]
    fn region_images_are_consistent() {
        let g = boost([0.0, 0.0, 1.0], 0.6).unwrap().compose(&rotation([1.0, 0.0, 0.0], 0.5).unwrap());
        let m = 1.0;
        let regions = [
            Region::spatial_ball(m, [0.0, 0.0, 0.0], 0.7),
            Region::spatial_half_space([0.0, 0.6, 0.8], 0.13),
            Region::spatial_box([-0.33, -0.21, -0.64], [0.47, 0.38, 0.22]),
        ];
        let grid = build_grid(m, 1.2, 6).unwrap();
        for e in &regions {
            let ge = e.transformed(&g);
            for p in grid.points() {
                assert_eq!(e.contains(p), ge.contains(&g.apply(p)), "{}", e.kind());
            }
        }
    }

    #[test]
    fn record_pass_flag_follows_tolerance() {
        assert!(VerificationRecord::new("c", "e", "all", 1e-11, 1e-10).pass);
        assert!(!VerificationRecord::new("c", "e", "all", 2e-10, 1e-10).pass);
    }
}
