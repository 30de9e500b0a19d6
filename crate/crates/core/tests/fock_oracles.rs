mod common;

use covqsc_core::fock::*;
use covqsc_core::linalg::{exp_hermitian, expm, max_abs, CMatrix, CVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn ccr_below_the_top_shell() {
    let mut rng = common::rng(71);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let d = 1 + k % 3;
        let n = 4 + (k % 5) as u32;
        let space = FockSpace::new(d, n).unwrap();
        let u = CVector::from_fn(d, |_, _| common::complex(&mut rng));
        let v = CVector::from_fn(d, |_, _| common::complex(&mut rng));
        let a = annihilation(&space, &u).unwrap();
        let ad = creation(&space, &v).unwrap();
        let comm = FockOperator::new(space.clone(), &a.matrix * &ad.matrix - &ad.matrix * &a.matrix).unwrap();
        let expected = FockOperator::identity(&space).scaled(u.dotc(&v));
        worst = worst.max(comm.guarded_deviation(&expected, 1));
    }
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn exponential_kernel_within_tail_bound() {
    let mut rng = common::rng(72);
    for k in 0..40 {
        let d = 1 + k % 3;
        let n = 3 + (k % 6) as u32;
        let space = FockSpace::new(d, n).unwrap();
        let ru: f64 = rng.gen_range(0.1..1.5);
        let u = common::vector_with_norm(&mut rng, d, ru);
        let rv: f64 = rng.gen_range(0.1..1.5);
        let v = common::vector_with_norm(&mut rng, d, rv);
        let eu = exponential_vector(&space, &u).unwrap();
        let ev = exponential_vector(&space, &v).unwrap();
        let x = u.norm() * v.norm();
        let bound = x.powi(n as i32 + 1) / common::factorial(n + 1) * x.exp();
        let err = (eu.inner(&ev) - u.dotc(&v).exp()).norm();
        assert!(err <= bound + 1e-14, "d={d} N={n}: {err} > {bound}");
    }
}

#[test]
fn coherent_state_matches_closed_form() {
    let space = FockSpace::new(1, 12).unwrap();
    let u = 0.3;
    let w = weyl_operator(&space, &WeylDescriptor::displacement(CVector::from_element(1, c(u, 0.0)))).unwrap();
    let out = w.apply(&FockState::vacuum(&space));
    let mut worst: f64 = 0.0;
    for n in 0..=12u32 {
        let expected = (-u * u / 2.0).exp() * u.powi(n as i32) / common::factorial(n).sqrt();
        worst = worst.max((out.amplitudes[n as usize] - c(expected, 0.0)).norm());
    }
    assert!(worst < 1e-8, "{worst}");
    assert!((out.amplitudes[0] - c((-u * u / 2.0).exp(), 0.0)).norm() < 1e-8);
}

#[test]
fn conservation_operator_exponentiates_to_second_quantization() {
    let mut rng = common::rng(73);
    let space = FockSpace::new(2, 3).unwrap();
    let h = common::hermitian(&mut rng, 2);
    let dg = number_conservation(&space, &h).unwrap();
    assert!(dg.hermiticity_defect() < 1e-13);
    for t in [0.0, 0.25, 0.7, 1.0] {
        let lhs = expm(&(&dg.matrix * c(0.0, -t)));
        let rhs = second_quantization(&space, &exp_hermitian(&h, t).unwrap()).unwrap();
        let err = max_abs(&(lhs - &rhs.matrix));
        assert!(err < 1e-10, "t={t}: {err}");
    }
}

#[test]
fn stone_generator_by_finite_difference() {
    let mut rng = common::rng(74);
    let space = FockSpace::new(3, 3).unwrap();
    let h = common::hermitian(&mut rng, 3);
    let dg = number_conservation(&space, &h).unwrap();
    let step = 1e-5;
    let plus = second_quantization(&space, &exp_hermitian(&h, step).unwrap()).unwrap();
    let minus = second_quantization(&space, &exp_hermitian(&h, -step).unwrap()).unwrap();
    let derivative = (&plus.matrix - &minus.matrix) * c(1.0 / (2.0 * step), 0.0);
    let err = max_abs(&(derivative - &dg.matrix * c(0.0, -1.0)));
    assert!(err < 1e-8, "{err}");
}

#[test]
fn second_quantization_is_a_functor() {
    let mut rng = common::rng(75);
    let space = FockSpace::new(3, 4).unwrap();
    for _ in 0..10 {
        let u1 = common::unitary(&mut rng, 3);
        let u2 = common::unitary(&mut rng, 3);
        let g12 = second_quantization(&space, &(&u1 * &u2)).unwrap();
        let g1 = second_quantization(&space, &u1).unwrap();
        let g2 = second_quantization(&space, &u2).unwrap();
        assert!(g12.deviation(&g1.then(&g2)) < 1e-12);
        let adj = second_quantization(&space, &u1.adjoint()).unwrap();
        assert!(adj.deviation(&g1.adjoint()) < 1e-12);
        assert!(g1.unitarity_defect() < 1e-12);
    }
}

#[test]
fn weyl_operators_are_unitary() {
    let mut rng = common::rng(76);
    for (d, n) in [(1, 12), (2, 8), (3, 8)] {
        let space = FockSpace::new(d, n).unwrap();
        let ru: f64 = rng.gen_range(0.1..1.0);
        let u = common::vector_with_norm(&mut rng, d, ru);
        let w = WeylDescriptor::new(u, common::unitary(&mut rng, d)).unwrap();
        let op = weyl_operator(&space, &w).unwrap();
        assert!(op.unitarity_defect() < 1e-10);
    }
}

#[test]
fn weyl_action_on_exponential_vectors() {
    let mut rng = common::rng(77);
    let space = FockSpace::new(2, 14).unwrap();
    let u = common::vector_with_norm(&mut rng, 2, 0.3);
    let v = common::vector_with_norm(&mut rng, 2, 0.3);
    let un = common::unitary(&mut rng, 2);
    let w = WeylDescriptor::new(u.clone(), un.clone()).unwrap();
    let lhs = weyl_operator(&space, &w).unwrap().apply(&exponential_vector(&space, &v).unwrap());
    let uv = &un * &v;
    let factor = (c(-u.norm_squared() / 2.0, 0.0) - u.dotc(&uv)).exp();
    let rhs = exponential_vector(&space, &(&u + &uv)).unwrap();
    let keep = space.guarded_indices(DEFAULT_GUARD);
    let worst = keep
        .iter()
        .map(|&i| (lhs.amplitudes[i] - rhs.amplitudes[i] * factor).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn composition_law_on_guarded_block() {
    let mut rng = common::rng(78);
    let space = FockSpace::new(2, 6).unwrap();
    for _ in 0..10 {
        let w1 = WeylDescriptor::new(common::vector_with_norm(&mut rng, 2, 0.15), common::unitary(&mut rng, 2)).unwrap();
        let w2 = WeylDescriptor::new(common::vector_with_norm(&mut rng, 2, 0.15), common::unitary(&mut rng, 2)).unwrap();
        let d = weyl_composition_deviation(&space, &w1, &w2, DEFAULT_GUARD).unwrap();
        assert!(d < 1e-8, "{d}");
    }
}

#[test]
fn derived_commutator_phase_on_reference_pair() {
    // d = 1, u1 = 0.2, u2 = 0.2i, N = 14, guard 4
    let space = FockSpace::new(1, 14).unwrap();
    let w1 = WeylDescriptor::displacement(CVector::from_element(1, c(0.2, 0.0)));
    let w2 = WeylDescriptor::displacement(CVector::from_element(1, c(0.0, 0.2)));
    let phase = commutator_phase(&w1, &w2);
    assert!((phase - Complex64::from_polar(1.0, -0.08)).norm() < 1e-15);
    let d = commutation_deviation(&space, &w1, &w2, phase, DEFAULT_GUARD).unwrap();
    assert!(d < 1e-6, "{d}");
}

#[test]
fn quoted_commutator_phase_differs_from_derived_one() {
    // the relation with e^{+i Im<u1,u2>} is the one usually quoted; under
    // these conventions the operators pick up e^{-2i Im<u1,u2>} instead
    let space = FockSpace::new(1, 14).unwrap();
    let w1 = WeylDescriptor::displacement(CVector::from_element(1, c(0.2, 0.0)));
    let w2 = WeylDescriptor::displacement(CVector::from_element(1, c(0.0, 0.2)));
    let quoted = weyl_commutation_check(&space, &w1, &w2, DEFAULT_GUARD).unwrap();
    assert!(quoted > 0.1, "{quoted}");
}

#[test]
fn commutation_deviation_swap_symmetry() {
    let mut rng = common::rng(79);
    let space = FockSpace::new(2, 8).unwrap();
    let w1 = WeylDescriptor::new(common::vector_with_norm(&mut rng, 2, 0.4), common::unitary(&mut rng, 2)).unwrap();
    let w2 = WeylDescriptor::new(common::vector_with_norm(&mut rng, 2, 0.4), common::unitary(&mut rng, 2)).unwrap();
    let lambda = Complex64::from_polar(1.0, 0.37);
    let a = commutation_deviation(&space, &w1, &w2, lambda, DEFAULT_GUARD).unwrap();
    let b = commutation_deviation(&space, &w2, &w1, lambda.conj(), DEFAULT_GUARD).unwrap();
    assert!((a - b).abs() < 1e-14);
}

#[test]
fn first_order_cocycle_identity() {
    let mut rng = common::rng(80);
    let params = CocycleParams {
        u0: CVector::from_fn(2, |_, _| common::complex(&mut rng)),
        blocks: (0..2)
            .map(|_| (CVector::from_fn(2, |_, _| common::complex(&mut rng)), common::hermitian(&mut rng, 2)))
            .collect(),
    };
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = rng.gen_range(-3.0..3.0);
        let t = rng.gen_range(-3.0..3.0);
        let (vs, us) = first_order_cocycle(s, &params).unwrap();
        let (vt, _) = first_order_cocycle(t, &params).unwrap();
        let (vst, _) = first_order_cocycle(s + t, &params).unwrap();
        let r = &vst - &vs - &us * &vt;
        worst = worst.max(r.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    assert!(worst < 1e-12, "{worst}");
    let (v0, u0) = first_order_cocycle(0.0, &params).unwrap();
    assert!(v0.iter().all(|z| *z == c(0.0, 0.0)));
    assert_eq!(u0, CMatrix::identity(6, 6));
}

fn cvec(dim: usize) -> impl Strategy<Value = CVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_map(|v| CVector::from_iterator(v.len(), v.into_iter().map(|(a, b)| c(a, b))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ladder_operators_are_adjoint_and_linear(u in cvec(3), v in cvec(3), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let space = FockSpace::new(3, 4).unwrap();
        let alpha = c(a, b);
        let ad = creation(&space, &u).unwrap();
        prop_assert_eq!(annihilation(&space, &u).unwrap().matrix, ad.matrix.adjoint());
        let lhs = creation(&space, &(&u * alpha + &v)).unwrap();
        let rhs = &ad.matrix * alpha + creation(&space, &v).unwrap().matrix;
        prop_assert!(max_abs(&(lhs.matrix - rhs)) < 1e-14);
    }

    #[test]
    fn quadratures_rebuild_ladder_operators(u in cvec(2)) {
        let space = FockSpace::new(2, 5).unwrap();
        let (p, q) = quadratures(&space, &u).unwrap();
        let ad = creation(&space, &u).unwrap();
        let rebuilt = (&q.matrix - &p.matrix * c(0.0, 1.0)) * c(0.5, 0.0);
        prop_assert_eq!(rebuilt, ad.matrix);
    }

    #[test]
    fn coherent_vectors_have_unit_norm_up_to_tail(u in cvec(2)) {
        let u = &u * c(0.4, 0.0);
        let space = FockSpace::new(2, 10).unwrap();
        let e = exponential_vector(&space, &u).unwrap();
        let x = u.norm_squared();
        let bound = x.powi(11) / common::factorial(11) * x.exp();
        prop_assert!((e.norm().powi(2) - x.exp()).abs() <= bound + 1e-14);
    }
}
