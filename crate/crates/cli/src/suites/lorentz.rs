use covqsc_core::lorentz::{
    classify_orbit, little_group_of, rotation, standard_boost, wigner_rotation, FourVector, LittleGroupTag,
    LorentzTransform, OrbitTag,
};
use rand::Rng;
use rayon::prelude::*;

use super::{Suite, SuiteContext};
use crate::report::{CheckRecord, Sample};

const WORDS: usize = 1000;
const MAX_LEN: usize = 4;
const CLASS_TOL: f64 = 1e-9;

const TAGS: [OrbitTag; 6] = [
    OrbitTag::TimeLikeForward,
    OrbitTag::TimeLikeBackward,
    OrbitTag::SpaceLike,
    OrbitTag::LightLikeForward,
    OrbitTag::LightLikeBackward,
    OrbitTag::Origin,
];

fn momentum_of_class<R: Rng>(rng: &mut R, tag: OrbitTag) -> FourVector {
    let q: [f64; 3] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    let r = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
    let m: f64 = rng.gen_range(0.2..2.0);
    let e = (m * m + r * r).sqrt();
    match tag {
        OrbitTag::TimeLikeForward => FourVector::new(e, q[0], q[1], q[2]),
        OrbitTag::TimeLikeBackward => FourVector::new(-e, q[0], q[1], q[2]),
        OrbitTag::LightLikeForward => FourVector::new(r, q[0], q[1], q[2]),
        OrbitTag::LightLikeBackward => FourVector::new(-r, q[0], q[1], q[2]),
        OrbitTag::SpaceLike => FourVector::new(rng.gen_range(-0.9..0.9) * r, q[0], q[1], q[2]),
        OrbitTag::Origin => FourVector::zero(),
    }
}

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let mut rng = ctx.rng(Suite::Lorentz);
    let set = ctx.generators();
    let all = set.all_indices();
    let words: Vec<_> = (0..WORDS).map(|_| set.random_word(&mut rng, &all, MAX_LEN)).collect();
    let mut out = Vec::new();

    let check = ctx.check("lorentz.metric_preservation");
    let samples = words
        .par_iter()
        .map(|w| Sample::new(set.display(w), "", "", set.evaluate(w).metric_defect()))
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("lorentz.inverse");
    let samples = words
        .par_iter()
        .map(|w| {
            let g = set.evaluate(w);
            let e = g.compose(&set.evaluate(&w.inverse()));
            let id = LorentzTransform::identity();
            Sample::new(set.display(w), "", "", e.deviation(&id).max(e.spinor_deviation(&id)))
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("lorentz.orbit_invariance");
    let pairs: Vec<_> = (0..WORDS)
        .map(|k| {
            let p = momentum_of_class(&mut rng, TAGS[k % TAGS.len()]);
            (set.random_word(&mut rng, &all, MAX_LEN), p)
        })
        .collect();
    let misses = pairs
        .iter()
        .filter(|(w, p)| classify_orbit(p, CLASS_TOL).tag != classify_orbit(&set.evaluate(w).apply(p), CLASS_TOL).tag)
        .count();
    out.push(check.finish(vec![Sample::new(
        format!("{WORDS} random words"),
        "",
        format!("{WORDS} pairs"),
        misses as f64,
    )]));

    let check = ctx.check("lorentz.little_group");
    let expected = [
        (FourVector::rest(ctx.config.mass), LittleGroupTag::So3Timelike),
        (FourVector::new(-2.0, 0.3, 0.0, 0.1), LittleGroupTag::So3Timelike),
        (FourVector::new(1.0, 0.0, 0.0, 1.0), LittleGroupTag::Euclidean2Lightlike),
        (FourVector::new(0.5, 1.0, 0.0, 0.0), LittleGroupTag::So3Spacelike),
        (FourVector::zero(), LittleGroupTag::FullLorentzOrigin),
    ];
    let wrong = expected
        .iter()
        .filter(|(p, tag)| little_group_of(&classify_orbit(p, CLASS_TOL)) != *tag)
        .count();
    out.push(check.finish(vec![Sample::new("", "", "reference momenta", wrong as f64)]));

    let check = ctx.check("lorentz.full_turn_spinor");
    let samples = (0..3)
        .map(|axis| {
            let mut n = [0.0; 3];
            n[axis] = 1.0;
            let turn = rotation(n, 2.0 * std::f64::consts::PI).expect("unit axis");
            let id = LorentzTransform::identity();
            let minus = (turn.spinor() + id.spinor()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            Sample::new(format!("R{}(2pi)", ["x", "y", "z"][axis]), "", "", turn.deviation(&id).max(minus))
        })
        .collect();
    out.push(check.finish(samples));

    let mass = ctx.config.mass;
    let momenta: Vec<FourVector> = (0..200)
        .map(|_| {
            FourVector::on_shell(
                mass,
                [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
            )
        })
        .collect();
    let check = ctx.check("lorentz.standard_boost");
    let samples = momenta
        .par_iter()
        .map(|p| {
            let dev = match standard_boost(p, mass) {
                Ok(l) => (l.apply(&FourVector::rest(mass)) - *p).max_abs() / p.p0,
                Err(_) => f64::INFINITY,
            };
            Sample::new("", "", format!("{p}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("lorentz.wigner_stabilizer");
    let gs: Vec<_> = momenta.iter().map(|_| set.random_word(&mut rng, &all, MAX_LEN)).collect();
    let samples = momenta
        .par_iter()
        .zip(gs.par_iter())
        .map(|(p, w)| {
            let dev = match wigner_rotation(&set.evaluate(w), p, mass) {
                Ok(h) => h.stabilizer_defect(mass).max(h.spatial_orthogonality_defect()),
                Err(_) => f64::INFINITY,
            };
            Sample::new(set.display(w), "", format!("{p}"), dev)
        })
        .collect();
    out.push(check.finish(samples));

    out
}
