mod common;

use covqsc_core::covariant_weyl::*;
use covqsc_core::fock::{self, FockOperator, FockState};
use covqsc_core::group::{Generator, GeneratorSet, GroupWord};
use covqsc_core::induced_rep::Region;
use covqsc_core::linalg::{max_abs, unitarity_defect};
use num_complex::Complex64;

fn system() -> CovariantSystem {
    CovariantSystem::new(CovariantConfig::default()).unwrap()
}

fn random_words(sys: &CovariantSystem, seed: u64, count: usize) -> Vec<GroupWord> {
    let mut rng = common::rng(seed);
    let all = sys.generators().all_indices();
    (0..count).map(|_| sys.generators().random_word(&mut rng, &all, 4)).collect()
}

#[test]
fn rotation_sweep_second_quantized_imprimitivity() {
    let sys = system();
    let regions = [
        Region::spatial_ball(1.0, [0.0, 0.0, 0.37], 0.55),
        Region::spatial_half_space([0.0, 0.28, 0.96], 0.21),
        Region::spatial_box([-0.13, -0.11, -0.27], [0.19, 0.23, 0.91]),
    ];
    let mut worst: f64 = 0.0;
    for w in random_words(&sys, 81, 12) {
        for e in &regions {
            worst = worst.max(second_quantized_si_check(&sys, &w, e).unwrap());
        }
    }
    assert!(worst < 1e-9, "{worst}");
}

#[test]
fn one_particle_unitaries_form_a_representation() {
    let sys = system();
    let words = random_words(&sys, 82, 20);
    for pair in words.chunks(2) {
        let u1 = one_particle_unitary(&sys, &pair[0]).unwrap();
        let u2 = one_particle_unitary(&sys, &pair[1]).unwrap();
        let u12 = one_particle_unitary(&sys, &pair[0].concat(&pair[1])).unwrap();
        assert!(max_abs(&(&u1 * &u2 - u12)) < 1e-10);
        assert!(unitarity_defect(&u1) < 1e-12);
    }
}

#[test]
fn weyl_family_is_projective_with_the_composition_multiplier() {
    let sys = system();
    let words = random_words(&sys, 83, 16);
    for pair in words.chunks(2) {
        let d = projective_law_deviation(&sys, &pair[0], &pair[1]).unwrap();
        assert!(d < 1e-8, "{d}");
        let w1 = sys.descriptor(&pair[0]).unwrap();
        let w2 = sys.descriptor(&pair[1]).unwrap();
        assert!((fock::composition_phase(&w1, &w2).norm() - 1.0).abs() < 1e-15);
        let vg = covariant_weyl(&sys, &pair[0]).unwrap();
        assert!(vg.guarded_unitarity_defect(sys.guard()) < 1e-9);
    }
}

#[test]
fn associativity_is_exact_for_matrices() {
    let sys = system();
    let w = random_words(&sys, 84, 3);
    let a = covariant_weyl(&sys, &w[0]).unwrap();
    let b = covariant_weyl(&sys, &w[1]).unwrap();
    let c = covariant_weyl(&sys, &w[2]).unwrap();
    let lhs = a.then(&b).then(&c);
    let rhs = a.then(&b.then(&c));
    assert!(lhs.deviation(&rhs) < 1e-13);
}

#[test]
fn cocycle_identity_for_sampled_words() {
    let sys = system();
    let words = random_words(&sys, 85, 40);
    for pair in words.chunks(2) {
        assert!(cocycle_identity_deviation(&sys, &pair[0], &pair[1]).unwrap() < 1e-10);
    }
}

#[test]
fn vacuum_expectation_is_the_coherent_overlap() {
    let sys = system();
    for w in random_words(&sys, 86, 10) {
        assert!(vacuum_expectation_deviation(&sys, &w).unwrap() < 1e-8);
    }
}

#[test]
fn field_operators_on_a_two_point_grid() {
    let cfg = CovariantConfig {
        generators: GeneratorSet::new(vec![Generator::Rotation { axis: 2, angle: 0.4 }]).unwrap(),
        max_points: 2,
        cutoff: 3,
        guard: 3,
        ..CovariantConfig::default()
    };
    let sys = CovariantSystem::new(cfg).unwrap();
    assert_eq!(sys.one_particle_dim(), 4);
    let words = random_words(&sys, 87, 6);
    for pair in words.chunks(2) {
        let f = field_operators(&sys, &pair[0]).unwrap();
        assert_eq!(quadrature_reconstruction_deviation(&f), 0.0);
        assert_eq!(f.a.apply(&FockState::vacuum(sys.fock())).norm(), 0.0);
        let d = field_covariance_deviation(&sys, &pair[1], &pair[0]).unwrap();
        assert!(d < 1e-10, "{d}");
    }
    let e = GroupWord::identity();
    assert!(covariant_weyl(&sys, &e).unwrap().deviation(&FockOperator::identity(sys.fock())) < 1e-14);
}

#[test]
fn full_space_region_gives_identity_on_both_sides() {
    let sys = system();
    for w in random_words(&sys, 88, 4) {
        assert!(second_quantized_si_check(&sys, &w, &Region::All).unwrap() < 1e-12);
    }
}

#[test]
fn quoted_covariant_phase_is_not_the_multiplier_ratio() {
    // compare e^{i Im<v_g, U_g v_h>} with the ratio of composition
    // multipliers; the two disagree whenever Im<v_g, U_g v_h> != 0
    let sys = system();
    let words = random_words(&sys, 89, 20);
    let mut largest: f64 = 0.0;
    for pair in words.chunks(2) {
        let wg = sys.descriptor(&pair[0]).unwrap();
        let wh = sys.descriptor(&pair[1]).unwrap();
        let quoted = Complex64::from_polar(1.0, wg.u().dotc(&(wg.unitary() * wh.u())).im);
        largest = largest.max((quoted - fock::commutator_phase(&wg, &wh)).norm());
    }
    assert!(largest > 1e-4, "{largest}");
}
