use std::sync::Arc;

use covqsc_core::induced_rep::{borel_section, cocycle_from_homomorphism, little_group_rep, SpinorRep};
use covqsc_core::lorentz::{FourVector, LorentzTransform};
use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{Suite, SuiteContext};
use crate::report::{CheckRecord, Sample};

const PAIRS: usize = 500;

fn max_abs2(m: &Matrix2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let cfg = ctx.config;
    let mut rng = ctx.rng(Suite::Cocycle);
    let set = ctx.generators();
    let all = set.all_indices();
    let ids = [
        "cocycle.strict",
        "cocycle.identity",
        "cocycle.little_group_homomorphism",
        "cocycle.borel_section",
    ];
    let (grid, rep) = match ctx.one_particle_grid().and_then(|g| Ok((g, SpinorRep::new(cfg.mass)?))) {
        Ok(x) => x,
        Err(e) => return ids.iter().map(|id| ctx.check(id).fail(&e)).collect(),
    };
    let basis = rep.basis().clone();
    let cocycle = cocycle_from_homomorphism(cfg.mass, Arc::new(rep));
    let mut out = Vec::new();

    let check = ctx.check("cocycle.strict");
    let pairs: Vec<_> = (0..PAIRS)
        .map(|_| (set.random_word(&mut rng, &all, 4), set.random_word(&mut rng, &all, 4)))
        .collect();
    let samples = pairs
        .par_iter()
        .map(|(w1, w2)| {
            let g1 = set.evaluate(w1);
            let g2 = set.evaluate(w2);
            let g12 = g1.compose(&g2);
            let dev = grid
                .points()
                .iter()
                .map(|p| -> covqsc_core::Result<f64> {
                    let lhs = cocycle.evaluate(&g12, p)?;
                    let rhs = cocycle.evaluate(&g1, &g2.apply(p))? * cocycle.evaluate(&g2, p)?;
                    Ok(max_abs2(&(lhs - rhs)))
                })
                .try_fold(0.0_f64, |acc, d| d.map(|d| acc.max(d)))
                .unwrap_or(f64::INFINITY);
            Sample::new(
                format!("{} ; {}", set.display(w1), set.display(w2)),
                "",
                format!("{} grid points", grid.len()),
                dev,
            )
        })
        .collect();
    out.push(check.finish(samples));

    // exact: compares with zero tolerance in effect
    let check = ctx.check("cocycle.identity");
    let e = LorentzTransform::identity();
    let samples = grid
        .points()
        .iter()
        .map(|p| {
            let dev = cocycle
                .evaluate(&e, p)
                .map(|m| max_abs2(&(m - Matrix2::identity())))
                .unwrap_or(f64::INFINITY);
            Sample::new("e", "", format!("{p}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("cocycle.little_group_homomorphism");
    let rotations = set.rotation_indices();
    let samples = (0..200)
        .map(|_| (set.random_word(&mut rng, &rotations, 6), set.random_word(&mut rng, &rotations, 6)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(w1, w2)| {
            let h1 = set.evaluate(w1);
            let h2 = set.evaluate(w2);
            let dev = (|| -> covqsc_core::Result<f64> {
                let lhs = little_group_rep(&h1.compose(&h2), &basis)?;
                let rhs = little_group_rep(&h1, &basis)? * little_group_rep(&h2, &basis)?;
                Ok(max_abs2(&(lhs - rhs)))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new(format!("{} ; {}", set.display(w1), set.display(w2)), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("cocycle.borel_section");
    let momenta: Vec<FourVector> = (0..200)
        .map(|_| {
            FourVector::on_shell(
                cfg.mass,
                [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
            )
        })
        .collect();
    let rest = FourVector::rest(cfg.mass);
    let mut samples: Vec<Sample> = momenta
        .par_iter()
        .map(|p| {
            let dev = borel_section(p, cfg.mass)
                .map(|c| (c.apply(&rest) - *p).max_abs() / p.p0)
                .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("{p}"), dev)
        })
        .collect();
    // c(rest) = e
    let at_rest = borel_section(&rest, cfg.mass)
        .map(|c| c.deviation(&e).max(c.spinor_deviation(&e)))
        .unwrap_or(f64::INFINITY);
    samples.push(Sample::new("", "", "rest", at_rest));
    out.push(check.finish(samples));

    out
}
