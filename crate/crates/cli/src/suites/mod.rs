//! Verification suites and the registry of their checks.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use covqsc_core::group::{GeneratorSet, Letter};
use covqsc_core::hyperboloid::{build_grid, build_orbit_grid, FiberedSection, MomentumGrid};
use covqsc_core::linalg::{CMatrix, CVector};
use nalgebra::Vector2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{GridKind, RunConfig};
use crate::report::{CheckBuilder, CheckRecord};

mod cocycle;
mod covariant;
mod fock;
mod imprimitivity;
mod lorentz;
mod measure;
mod weyl;

/// Tolerance for identities that must hold bit for bit.
pub const EXACT: f64 = f64::MIN_POSITIVE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lorentz,
    Measure,
    Cocycle,
    Imprimitivity,
    Fock,
    Weyl,
    Covariant,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lorentz,
        Suite::Measure,
        Suite::Cocycle,
        Suite::Imprimitivity,
        Suite::Fock,
        Suite::Weyl,
        Suite::Covariant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lorentz => "lorentz",
            Suite::Measure => "measure",
            Suite::Cocycle => "cocycle",
            Suite::Imprimitivity => "imprimitivity",
            Suite::Fock => "fock",
            Suite::Weyl => "weyl",
            Suite::Covariant => "covariant",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == name)
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }

    pub fn run(self, ctx: &SuiteContext) -> Vec<CheckRecord> {
        match self {
            Suite::Lorentz => lorentz::run(ctx),
            Suite::Measure => measure::run(ctx),
            Suite::Cocycle => cocycle::run(ctx),
            Suite::Imprimitivity => imprimitivity::run(ctx),
            Suite::Fock => fock::run(ctx),
            Suite::Weyl => weyl::run(ctx),
            Suite::Covariant => covariant::run(ctx),
        }
    }
}

/// A registered check: id, default tolerance and the operations it drives.
pub struct CheckSpec {
    pub suite: Suite,
    pub id: &'static str,
    pub tolerance: f64,
    pub covers: &'static [&'static str],
}

const fn spec(suite: Suite, id: &'static str, tolerance: f64, covers: &'static [&'static str]) -> CheckSpec {
    CheckSpec {
        suite,
        id,
        tolerance,
        covers,
    }
}

use Suite::*;

pub const CHECKS: &[CheckSpec] = &[
    spec(Lorentz, "lorentz.metric_preservation", 1e-12, &["lorentz::rotation"]),
    spec(Lorentz, "lorentz.inverse", 1e-12, &["lorentz::rotation"]),
    // misclassification counts; zero required
    spec(Lorentz, "lorentz.orbit_invariance", 0.5, &["lorentz::classify_orbit", "lorentz::minkowski_inner"]),
    spec(Lorentz, "lorentz.little_group", 0.5, &["lorentz::little_group_of", "lorentz::classify_orbit"]),
    spec(Lorentz, "lorentz.full_turn_spinor", 1e-12, &["lorentz::rotation"]),
    spec(Lorentz, "lorentz.standard_boost", 1e-10, &["lorentz::standard_boost"]),
    spec(Lorentz, "lorentz.wigner_stabilizer", 1e-9, &["lorentz::wigner_rotation"]),
    spec(Measure, "measure.total_weight", 0.01, &["hyperboloid::build_grid"]),
    spec(
        Measure,
        "measure.transport_norm",
        1e-12,
        &["hyperboloid::transport_grid", "induced_rep::apply_u", "hyperboloid::section_inner"],
    ),
    spec(Measure, "measure.fiber_basis", 1e-12, &["hyperboloid::fiber_basis", "hyperboloid::gamma_matrices"]),
    spec(Measure, "measure.inner_product_invariance", 1e-12, &["hyperboloid::section_inner"]),
    spec(
        Cocycle,
        "cocycle.strict",
        1e-10,
        &["induced_rep::cocycle_from_homomorphism", "lorentz::wigner_rotation"],
    ),
    spec(Cocycle, "cocycle.identity", EXACT, &["induced_rep::cocycle_from_homomorphism"]),
    spec(Cocycle, "cocycle.little_group_homomorphism", 1e-12, &["induced_rep::little_group_rep"]),
    spec(Cocycle, "cocycle.borel_section", 1e-10, &["induced_rep::borel_section"]),
    spec(
        Imprimitivity,
        "imprimitivity.covariance",
        1e-10,
        &["induced_rep::verify_imprimitivity", "induced_rep::apply_p", "induced_rep::apply_u"],
    ),
    spec(Imprimitivity, "imprimitivity.radon_nikodym_unitarity", 1e-10, &["induced_rep::apply_u"]),
    spec(Imprimitivity, "imprimitivity.translation_commutes", 1e-12, &["induced_rep::apply_p"]),
    spec(Fock, "fock.ccr", 1e-12, &["fock::creation", "fock::annihilation"]),
    spec(Fock, "fock.adjointness", EXACT, &["fock::creation", "fock::annihilation"]),
    // ratio of the observed error to the tail bound
    spec(Fock, "fock.exponential_kernel", 1.0, &["fock::exponential_vector"]),
    spec(Fock, "fock.coherent_state", 1e-8, &["fock::weyl_operator"]),
    spec(Fock, "fock.vacuum_overlap", 1e-8, &["fock::weyl_operator"]),
    spec(
        Fock,
        "fock.conservation_exponential",
        1e-10,
        &["fock::number_conservation", "fock::second_quantization"],
    ),
    spec(Fock, "fock.functor", 1e-12, &["fock::second_quantization"]),
    spec(Fock, "fock.quadrature_reconstruction", EXACT, &["fock::quadratures"]),
    spec(Fock, "fock.weyl_unitarity", 1e-10, &["fock::weyl_operator"]),
    spec(Weyl, "weyl.commutation_phase", 1e-6, &["fock::weyl_commutation_check", "fock::first_order_cocycle"]),
    spec(Weyl, "weyl.commutation_phase_reference", 1e-6, &["fock::weyl_commutation_check"]),
    spec(Weyl, "weyl.derived_commutator_phase", 1e-6, &["fock::weyl_operator", "fock::first_order_cocycle"]),
    spec(Weyl, "weyl.composition_law", 1e-8, &["fock::weyl_operator"]),
    spec(Weyl, "weyl.first_order_cocycle", 1e-12, &["fock::first_order_cocycle"]),
    spec(Covariant, "covariant.second_quantized_si", 1e-9, &["covariant_weyl::second_quantized_si_check"]),
    spec(Covariant, "covariant.field_covariance", 1e-10, &["covariant_weyl::field_operators"]),
    spec(Covariant, "covariant.quadrature_reconstruction", EXACT, &["covariant_weyl::field_operators"]),
    spec(Covariant, "covariant.one_particle_representation", 1e-10, &["covariant_weyl::one_particle_unitary"]),
    spec(Covariant, "covariant.cocycle_identity", 1e-10, &["covariant_weyl::covariant_weyl"]),
    spec(Covariant, "covariant.projective_law", 1e-8, &["covariant_weyl::covariant_weyl"]),
    spec(Covariant, "covariant.vacuum_expectation", 1e-8, &["covariant_weyl::covariant_weyl"]),
    spec(Covariant, "covariant.guarded_unitarity", 1e-9, &["covariant_weyl::covariant_weyl"]),
    spec(Covariant, "covariant.commutation_phase", 1e-6, &["covariant_weyl::covariant_weyl", "fock::weyl_commutation_check"]),
    spec(Covariant, "covariant.translation_projection", 1e-12, &["induced_rep::apply_p"]),
];

pub fn default_tolerances() -> BTreeMap<&'static str, f64> {
    CHECKS.iter().map(|c| (c.id, c.tolerance)).collect()
}

/// Operations of the core library that no registered check drives.
pub fn uncovered_operations() -> Vec<String> {
    covqsc_core::OPERATIONS
        .iter()
        .map(|(m, op)| format!("{m}::{op}"))
        .filter(|name| !CHECKS.iter().any(|c| c.covers.contains(&name.as_str())))
        .collect()
}

pub struct SuiteContext<'a> {
    pub config: &'a RunConfig,
    pub dump_dir: Option<&'a Path>,
}

impl<'a> SuiteContext<'a> {
    pub fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(suite.index());
        rng
    }

    pub fn check(&self, id: &'static str) -> CheckBuilder {
        let spec = CHECKS.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("unregistered check `{id}`"));
        CheckBuilder::new(spec.suite.name(), spec.id, self.config.tolerance(id))
    }

    pub fn generators(&self) -> GeneratorSet {
        self.config.generator_set()
    }

    /// Grid used by the one-particle suites.
    pub fn one_particle_grid(&self) -> covqsc_core::Result<Arc<MomentumGrid>> {
        let g = &self.config.grid;
        match g.kind {
            GridKind::Tensor => Ok(Arc::new(build_grid(self.config.mass, g.extent, g.n_per_axis)?)),
            GridKind::Orbit => Ok(Arc::new(orbit_grid(self.config)?)),
        }
    }
}

/// Orbit grid of the configured seeds under the orbit generators.
pub fn orbit_grid(config: &RunConfig) -> covqsc_core::Result<MomentumGrid> {
    let set = GeneratorSet::new(config.grid.orbit_generators.clone())?;
    let transforms: Vec<_> = (0..set.len()).map(|i| set.letter_transform(Letter::new(i)).clone()).collect();
    build_orbit_grid(config.mass, &config.grid.seeds, 1.0, &transforms, config.grid.max_orbit_points)
}

pub(crate) fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub(crate) fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    CVector::from_fn(dim, |_, _| complex(rng))
}

pub(crate) fn vector_with_norm<R: Rng>(rng: &mut R, dim: usize, norm: f64) -> CVector {
    let v = random_vector(rng, dim);
    let n = v.norm();
    v * Complex64::new(norm / n, 0.0)
}

pub(crate) fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| complex(rng));
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

pub(crate) fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| complex(rng)).qr().q()
}

pub(crate) fn random_section<R: Rng>(rng: &mut R, grid: &Arc<MomentumGrid>) -> FiberedSection {
    FiberedSection::from_fn(grid.clone(), |_, _| Vector2::new(complex(rng), complex(rng)))
}

/// Compact text form of a vector, for parameter hashes.
pub(crate) fn describe_vector(v: &CVector) -> String {
    v.iter()
        .map(|z| format!("{:.17e},{:.17e}", z.re, z.im))
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_operation_is_covered() {
        assert!(uncovered_operations().is_empty(), "{:?}", uncovered_operations());
    }

    #[test]
    fn check_ids_are_unique_and_prefixed() {
        let mut ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
        for c in CHECKS {
            assert!(c.id.starts_with(&format!("{}.", c.suite.name())), "{}", c.id);
            assert!(c.tolerance > 0.0);
        }
    }
}
