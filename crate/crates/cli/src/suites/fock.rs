use covqsc_core::fock::{
    annihilation, creation, exponential_vector, number_conservation, quadratures, second_quantization, weyl_operator,
    FockOperator, FockSpace, FockState, WeylDescriptor,
};
use covqsc_core::linalg::{exp_hermitian, expm, max_abs, CVector};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{describe_vector, random_hermitian, random_unitary, random_vector, vector_with_norm, Suite, SuiteContext};
use crate::report::{CheckRecord, Sample};

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Shapes `(d, N)` sampled by the ladder-operator checks.
const SHAPES: [(usize, u32); 6] = [(1, 4), (1, 8), (2, 4), (2, 8), (3, 4), (3, 8)];

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let mut rng = ctx.rng(Suite::Fock);
    let mut out = Vec::new();

    let ladder: Vec<_> = (0..50)
        .map(|k| {
            let (d, n) = SHAPES[k % SHAPES.len()];
            (d, n, random_vector(&mut rng, d), random_vector(&mut rng, d))
        })
        .collect();

    let check = ctx.check("fock.ccr");
    let samples = ladder
        .par_iter()
        .map(|(d, n, u, v)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, *n)?;
                let a = annihilation(&space, u)?;
                let ad = creation(&space, v)?;
                let comm = FockOperator::new(space.clone(), &a.matrix * &ad.matrix - &ad.matrix * &a.matrix)?;
                // the commutator is exact away from the top occupation shell
                Ok(comm.guarded_deviation(&FockOperator::identity(&space).scaled(u.dotc(v)), 1))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "guard 1", format!("d={d} N={n} u={} v={}", describe_vector(u), describe_vector(v)), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.adjointness");
    let samples = ladder
        .par_iter()
        .map(|(d, n, u, _)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, *n)?;
                let a = annihilation(&space, u)?;
                let ad = creation(&space, u)?;
                Ok(max_abs(&(a.matrix - ad.matrix.adjoint())))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d={d} N={n} u={}", describe_vector(u)), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.quadrature_reconstruction");
    let samples = ladder
        .par_iter()
        .map(|(d, n, u, _)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, *n)?;
                let (p, q) = quadratures(&space, u)?;
                let ad = creation(&space, u)?;
                let a = annihilation(&space, u)?;
                let ip = &p.matrix * c(0.0, 1.0);
                let plus = (&q.matrix - &ip) * c(0.5, 0.0);
                let minus = (&q.matrix + &ip) * c(0.5, 0.0);
                Ok(max_abs(&(plus - ad.matrix)).max(max_abs(&(minus - a.matrix))))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d={d} N={n} u={}", describe_vector(u)), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.exponential_kernel");
    let kernel: Vec<_> = (0..40)
        .map(|k| {
            let d = 1 + k % 3;
            let n = 3 + (k % 6) as u32;
            let ru: f64 = rng.gen_range(0.1..1.5);
            let rv: f64 = rng.gen_range(0.1..1.5);
            (d, n, vector_with_norm(&mut rng, d, ru), vector_with_norm(&mut rng, d, rv))
        })
        .collect();
    let samples = kernel
        .par_iter()
        .map(|(d, n, u, v)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, *n)?;
                let eu = exponential_vector(&space, u)?;
                let ev = exponential_vector(&space, v)?;
                let x = u.norm() * v.norm();
                let bound = x.powi(*n as i32 + 1) / factorial(n + 1) * x.exp();
                let err = (eu.inner(&ev) - u.dotc(v).exp()).norm();
                // ratio to the Taylor tail, with slack for rounding
                Ok(err / (bound + 1e-14))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d={d} N={n} u={} v={}", describe_vector(u), describe_vector(v)), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.coherent_state");
    let amplitudes = [0.1, 0.3, 0.5];
    let samples = amplitudes
        .par_iter()
        .map(|&u| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(1, 12)?;
                let w = weyl_operator(&space, &WeylDescriptor::displacement(CVector::from_element(1, c(u, 0.0))))?;
                let state = w.apply(&FockState::vacuum(&space));
                Ok((0..=12u32)
                    .map(|n| {
                        let expected = (-u * u / 2.0).exp() * u.powi(n as i32) / factorial(n).sqrt();
                        (state.amplitudes[n as usize] - c(expected, 0.0)).norm()
                    })
                    .fold(0.0, f64::max))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d=1 N=12 u={u}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.vacuum_overlap");
    let overlaps: Vec<_> = (0..12)
        .map(|k| {
            let d = 1 + k % 3;
            let r: f64 = rng.gen_range(0.05..0.5);
            (d, vector_with_norm(&mut rng, d, r))
        })
        .collect();
    let samples = overlaps
        .par_iter()
        .map(|(d, u)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, 8)?;
                let w = weyl_operator(&space, &WeylDescriptor::displacement(u.clone()))?;
                let vac = FockState::vacuum(&space);
                let overlap = vac.inner(&w.apply(&vac));
                Ok((overlap - c((-u.norm_squared() / 2.0).exp(), 0.0)).norm())
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d={d} N=8 u={}", describe_vector(u)), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.conservation_exponential");
    let generators: Vec<_> = (0..6)
        .map(|k| {
            let d = 1 + k % 3;
            (d, random_hermitian(&mut rng, d), rng.gen_range(-1.0..1.0))
        })
        .collect();
    let samples = generators
        .par_iter()
        .map(|(d, h, t)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, 4)?;
                let dg = number_conservation(&space, h)?;
                let lhs = expm(&(&dg.matrix * c(0.0, -*t)));
                let rhs = second_quantization(&space, &exp_hermitian(h, *t)?)?;
                Ok(max_abs(&(lhs - &rhs.matrix)).max(dg.hermiticity_defect()))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d={d} N=4 t={t}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.functor");
    let pairs: Vec<_> = (0..10).map(|_| (random_unitary(&mut rng, 3), random_unitary(&mut rng, 3))).collect();
    let samples = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (u1, u2))| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(3, 4)?;
                let g12 = second_quantization(&space, &(u1 * u2))?;
                let g1 = second_quantization(&space, u1)?;
                let g2 = second_quantization(&space, u2)?;
                let adj = second_quantization(&space, &u1.adjoint())?;
                Ok(g12
                    .deviation(&g1.then(&g2))
                    .max(adj.deviation(&g1.adjoint()))
                    .max(g1.unitarity_defect()))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d=3 N=4 pair {i}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("fock.weyl_unitarity");
    let weyl: Vec<_> = [(1usize, 12u32), (2, 8), (3, 6)]
        .into_iter()
        .map(|(d, n)| {
            let r: f64 = rng.gen_range(0.1..1.0);
            let u = vector_with_norm(&mut rng, d, r);
            (d, n, u, random_unitary(&mut rng, d))
        })
        .collect();
    let samples = weyl
        .par_iter()
        .map(|(d, n, u, un)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let space = FockSpace::new(*d, *n)?;
                let w = weyl_operator(&space, &WeylDescriptor::new(u.clone(), un.clone())?)?;
                Ok(w.unitarity_defect())
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new("", "", format!("d={d} N={n} u={}", describe_vector(u)), dev)
        })
        .collect();
    out.push(check.finish(samples));

    out
}
