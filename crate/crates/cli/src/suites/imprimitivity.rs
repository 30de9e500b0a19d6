use std::sync::Arc;

use covqsc_core::group::{GroupWord, Letter};
use covqsc_core::hyperboloid::{section_distance, section_inner, Density, MomentumGrid};
use covqsc_core::induced_rep::{apply_p, verify_imprimitivity, ImprimitivitySystem, Region};
use covqsc_core::lorentz::FourVector;
use rand::Rng;
use rayon::prelude::*;

use super::{random_section, Suite, SuiteContext};
use crate::report::{CheckRecord, Sample};

const SECTIONS: usize = 20;

/// Off-grid constants so no point sits on a region boundary.
pub(crate) fn regions(mass: f64) -> Vec<Region> {
    vec![
        Region::spatial_ball(mass, [0.13, -0.07, 0.21], 0.83),
        Region::spatial_half_space([0.48, 0.6, 0.64], 0.117),
        Region::spatial_box([-0.71, -0.53, -0.37], [0.61, 0.77, 0.43]),
    ]
}

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let cfg = ctx.config;
    let mut rng = ctx.rng(Suite::Imprimitivity);
    let set = ctx.generators();
    let ids = [
        "imprimitivity.covariance",
        "imprimitivity.radon_nikodym_unitarity",
        "imprimitivity.translation_commutes",
    ];
    let (grid, sys) = match ctx.one_particle_grid().and_then(|g| Ok((g, ImprimitivitySystem::spinor(cfg.mass)?))) {
        Ok(x) => x,
        Err(e) => return ids.iter().map(|id| ctx.check(id).fail(&e)).collect(),
    };
    let regions = regions(cfg.mass);
    let mut out = Vec::new();

    for k in 0..set.len() {
        let word = GroupWord::letter(Letter::new(k));
        let g = set.evaluate(&word);
        for e in &regions {
            let check = ctx.check("imprimitivity.covariance");
            let sections: Vec<_> = (0..SECTIONS).map(|_| random_section(&mut rng, &grid)).collect();
            let samples = sections
                .par_iter()
                .enumerate()
                .map(|(i, phi)| {
                    let dev = verify_imprimitivity(&sys, &g, e, phi).unwrap_or(f64::INFINITY) / phi.norm().max(1.0);
                    Sample::new(set.display(&word), e.kind(), format!("section {i}"), dev)
                })
                .collect();
            out.push(check.finish(samples));
        }
    }

    let check = ctx.check("imprimitivity.radon_nikodym_unitarity");
    let weighted = MomentumGrid::clone(&grid).with_density(Density::EnergyExponential { beta: 0.7 });
    let weighted = Arc::new(weighted);
    let inputs: Vec<_> = (0..set.len())
        .flat_map(|k| (0..5).map(move |j| (k, j)))
        .map(|(k, _)| (k, random_section(&mut rng, &weighted), random_section(&mut rng, &weighted)))
        .collect();
    let samples = inputs
        .par_iter()
        .map(|(k, phi, psi)| {
            let word = GroupWord::letter(Letter::new(*k));
            let g = set.evaluate(&word);
            let dev = (|| -> covqsc_core::Result<f64> {
                let a = sys.apply_u(&g, phi)?;
                let b = sys.apply_u(&g, psi)?;
                let before = section_inner(phi, psi)?;
                let after = section_inner(&a, &b)?;
                let back = sys.apply_u(&g.inverse(), &a)?;
                Ok(((before - after).norm() / before.norm().max(1.0))
                    .max(section_distance(&back, phi)? / phi.norm().max(1.0)))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new(set.display(&word), "", "density exp(-0.7 p0)", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("imprimitivity.translation_commutes");
    let inputs: Vec<_> = (0..30)
        .map(|i| {
            let a = FourVector::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            (a, i % regions.len(), random_section(&mut rng, &grid))
        })
        .collect();
    let samples = inputs
        .par_iter()
        .map(|(a, r, phi)| {
            let e = &regions[*r];
            let lhs = sys.apply_translation(a, &apply_p(e, phi));
            let rhs = apply_p(e, &sys.apply_translation(a, phi));
            let dev = section_distance(&lhs, &rhs).unwrap_or(f64::INFINITY) / phi.norm().max(1.0);
            Sample::new("", e.kind(), format!("{a}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    out
}
