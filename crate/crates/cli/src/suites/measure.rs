use covqsc_core::dirac::slash;
use covqsc_core::hyperboloid::{build_grid, fiber_basis, section_inner, transport_grid};
use covqsc_core::induced_rep::ImprimitivitySystem;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{random_section, Suite, SuiteContext};
use crate::report::{CheckRecord, Sample};

/// Axis points of the quadrature grid compared against the reference volume.
const QUADRATURE_AXIS: usize = 32;
const QUADRATURE_EXTENT: f64 = 1.0;
const REFERENCE_AXIS: usize = 128;

/// `∫ d³q / sqrt(m² + |q|²)` over `[-e, e]³` by composite Simpson.
fn reference_volume(mass: f64, e: f64, n: usize) -> f64 {
    let h = 2.0 * e / n as f64;
    let w = |i: usize| {
        if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let x = |i: usize| -e + i as f64 * h;
    (0..=n)
        .into_par_iter()
        .map(|i| {
            let mut s = 0.0;
            for j in 0..=n {
                for k in 0..=n {
                    let r2 = x(i) * x(i) + x(j) * x(j) + x(k) * x(k);
                    s += w(i) * w(j) * w(k) / (mass * mass + r2).sqrt();
                }
            }
            s
        })
        .sum::<f64>()
        * (h / 3.0).powi(3)
}

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let cfg = ctx.config;
    let mut rng = ctx.rng(Suite::Measure);
    let set = ctx.generators();
    let all = set.all_indices();
    let mut out = Vec::new();

    let check = ctx.check("measure.total_weight");
    out.push(check.from_result(build_grid(cfg.mass, QUADRATURE_EXTENT, QUADRATURE_AXIS).map(|grid| {
        let reference = reference_volume(cfg.mass, QUADRATURE_EXTENT, REFERENCE_AXIS);
        vec![Sample::new(
            "",
            "",
            format!("n={QUADRATURE_AXIS} extent={QUADRATURE_EXTENT}"),
            (grid.total_weight() - reference).abs() / reference,
        )]
    })));

    let grid = match ctx.one_particle_grid() {
        Ok(g) => g,
        Err(e) => {
            for id in ["measure.transport_norm", "measure.fiber_basis", "measure.inner_product_invariance"] {
                out.push(ctx.check(id).fail(&e));
            }
            return out;
        }
    };
    let sys = match ImprimitivitySystem::spinor(cfg.mass) {
        Ok(s) => s,
        Err(e) => {
            for id in ["measure.transport_norm", "measure.fiber_basis", "measure.inner_product_invariance"] {
                out.push(ctx.check(id).fail(&e));
            }
            return out;
        }
    };

    let inputs: Vec<_> = (0..100)
        .map(|_| {
            let w = set.random_word(&mut rng, &all, 4);
            (w, random_section(&mut rng, &grid), random_section(&mut rng, &grid))
        })
        .collect();

    let check = ctx.check("measure.transport_norm");
    let samples = inputs
        .par_iter()
        .map(|(w, phi, _)| {
            let g = set.evaluate(w);
            let dev = sys
                .apply_u(&g, phi)
                .map(|moved| {
                    let weights = (transport_grid(&g, phi.grid()).total_weight() - phi.grid().total_weight()).abs();
                    ((moved.norm() - phi.norm()).abs() / phi.norm().max(1.0)).max(weights)
                })
                .unwrap_or(f64::INFINITY);
            Sample::new(set.display(w), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("measure.inner_product_invariance");
    let samples = inputs
        .par_iter()
        .map(|(w, phi, psi)| {
            let g = set.evaluate(w);
            let dev = (|| -> covqsc_core::Result<f64> {
                let before = section_inner(phi, psi)?;
                let after = section_inner(&sys.apply_u(&g, phi)?, &sys.apply_u(&g, psi)?)?;
                Ok((before - after).norm() / before.norm().max(1.0))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new(set.display(w), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("measure.fiber_basis");
    let samples = grid
        .points()
        .par_iter()
        .map(|p| {
            let dev = fiber_basis(p, cfg.mass)
                .map(|b| {
                    let s = slash(p);
                    let mut worst: f64 = 0.0;
                    for (i, u) in b.basis.iter().enumerate() {
                        let r = s * u - u * Complex64::new(cfg.mass, 0.0);
                        worst = worst.max(r.norm() / p.p0);
                        for (j, v) in b.basis.iter().enumerate() {
                            let expected = if i == j { 1.0 } else { 0.0 };
                            worst = worst.max((u.dotc(v) - expected).norm());
                        }
                    }
                    worst
                })
                .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("{p}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    out
}
