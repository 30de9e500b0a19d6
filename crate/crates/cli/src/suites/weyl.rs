use covqsc_core::fock::{
    commutator_phase, composition_phase, first_order_cocycle, operator_commutation_deviation, quoted_commutation_phase,
    weyl_commutation_check, weyl_operator, CocycleParams, FockOperator, FockSpace, WeylDescriptor,
};
use covqsc_core::linalg::{max_abs_vec, CVector};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{describe_vector, random_hermitian, random_vector, vector_with_norm, Suite, SuiteContext};
use crate::report::{CheckRecord, Sample};

const PAIRS: usize = 25;
/// Cocycle family: one fixed mode plus a 2x2 block.
const DIM: usize = 3;
const CUTOFF: u32 = 8;
const GUARD: u32 = 4;
const U0_NORM: f64 = 0.06;
const U1_NORM: f64 = 0.03;

type Formed = (WeylDescriptor, WeylDescriptor, FockOperator, FockOperator, FockOperator);

fn random_params<R: Rng>(rng: &mut R) -> CocycleParams {
    CocycleParams {
        u0: vector_with_norm(rng, 1, U0_NORM),
        blocks: vec![(vector_with_norm(rng, DIM - 1, U1_NORM), random_hermitian(rng, DIM - 1))],
    }
}

fn descriptor(t: f64, params: &CocycleParams) -> covqsc_core::Result<WeylDescriptor> {
    let (v, u) = first_order_cocycle(t, params)?;
    WeylDescriptor::new(v, u)
}

fn describe(params: &CocycleParams, s: f64, t: f64) -> String {
    format!(
        "s={s:.17e} t={t:.17e} u0={} u1={}",
        describe_vector(&params.u0),
        describe_vector(&params.blocks[0].0)
    )
}

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let mut rng = ctx.rng(Suite::Weyl);
    let mut out = Vec::new();
    let space = match FockSpace::new(DIM, CUTOFF) {
        Ok(s) => s,
        Err(e) => {
            return [
                "weyl.commutation_phase",
                "weyl.commutation_phase_reference",
                "weyl.derived_commutator_phase",
                "weyl.composition_law",
                "weyl.first_order_cocycle",
            ]
            .iter()
            .map(|id| ctx.check(id).fail(&e))
            .collect()
        }
    };

    let pairs: Vec<_> = (0..PAIRS)
        .map(|_| (random_params(&mut rng), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    // each pair's three Weyl operators are formed once and shared by the checks
    let operators = pairs
        .par_iter()
        .map(|(p, s, t)| {
            let ws = descriptor(*s, p)?;
            let wt = descriptor(*t, p)?;
            let a = weyl_operator(&space, &ws)?;
            let b = weyl_operator(&space, &wt)?;
            let ab = weyl_operator(&space, &ws.compose(&wt))?;
            Ok((ws, wt, a, b, ab))
        })
        .collect::<covqsc_core::Result<Vec<_>>>();
    match operators {
        Err(e) => {
            for id in ["weyl.commutation_phase", "weyl.derived_commutator_phase", "weyl.composition_law"] {
                out.push(ctx.check(id).fail(&e));
            }
        }
        Ok(ops) => {
            let region = format!("N={CUTOFF} guard {GUARD}");
            let mut record = |id: &'static str, f: &(dyn Fn(&Formed) -> f64 + Sync)| {
                let check = ctx.check(id);
                let samples = pairs
                    .par_iter()
                    .zip(ops.par_iter())
                    .map(|((p, s, t), formed)| Sample::new("", region.clone(), describe(p, *s, *t), f(formed)))
                    .collect();
                out.push(check.finish(samples));
            };
            record("weyl.commutation_phase", &|(ws, wt, a, b, _)| {
                operator_commutation_deviation(a, b, quoted_commutation_phase(ws, wt), GUARD)
            });
            record("weyl.derived_commutator_phase", &|(ws, wt, a, b, _)| {
                operator_commutation_deviation(a, b, commutator_phase(ws, wt), GUARD)
            });
            record("weyl.composition_law", &|(ws, wt, a, b, ab)| {
                a.then(b).guarded_deviation(&ab.scaled(composition_phase(ws, wt)), GUARD)
            });
        }
    }

    // d = 1, u1 = 0.2, u2 = 0.2i, N = 14, guard 4
    let check = ctx.check("weyl.commutation_phase_reference");
    let reference = FockSpace::new(1, 14).and_then(|space| {
        let w1 = WeylDescriptor::displacement(CVector::from_element(1, Complex64::new(0.2, 0.0)));
        let w2 = WeylDescriptor::displacement(CVector::from_element(1, Complex64::new(0.0, 0.2)));
        weyl_commutation_check(&space, &w1, &w2, GUARD)
    });
    out.push(check.from_result(reference.map(|d| vec![Sample::new("", "N=14 guard 4", "u1=0.2 u2=0.2i", d)])));

    let check = ctx.check("weyl.first_order_cocycle");
    let inputs: Vec<_> = (0..100)
        .map(|_| {
            let params = CocycleParams {
                u0: random_vector(&mut rng, 2),
                blocks: (0..2)
                    .map(|_| (random_vector(&mut rng, 2), random_hermitian(&mut rng, 2)))
                    .collect(),
            };
            (params, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        })
        .collect();
    let samples = inputs
        .par_iter()
        .map(|(p, s, t)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let (vs, us) = first_order_cocycle(*s, p)?;
                let (vt, _) = first_order_cocycle(*t, p)?;
                let (vst, _) = first_order_cocycle(s + t, p)?;
                Ok(max_abs_vec(&(&vst - &vs - &us * &vt)))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", describe(p, *s, *t), dev)
        })
        .collect();
    out.push(check.finish(samples));

    out
}
