use std::collections::BTreeMap;
use std::path::Path;

use covqsc_core::covariant_weyl::{
    cocycle_identity_deviation, covariant_weyl, field_covariance_deviation, field_operators, one_particle_unitary,
    quadrature_reconstruction_deviation, second_quantized_si_check, translation_projection_deviation,
    CovariantConfig, CovariantSystem,
};
use covqsc_core::fock::{
    composition_phase, operator_commutation_deviation, quoted_commutation_phase, second_quantization, FockOperator,
};
use covqsc_core::group::{GeneratorSet, GroupWord, Letter};
use covqsc_core::induced_rep::Region;
use covqsc_core::linalg::{max_abs, unitarity_defect};
use covqsc_core::lorentz::FourVector;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{random_section, Suite, SuiteContext};
use crate::config::RunConfig;
use crate::report::{CheckRecord, Sample};

/// Pairs whose Weyl operators are formed densely; each costs three
/// matrix exponentials.
const OPERATOR_PAIRS: usize = 4;
const MAX_LEN: usize = 4;

const IDS: [&str; 10] = [
    "covariant.second_quantized_si",
    "covariant.field_covariance",
    "covariant.quadrature_reconstruction",
    "covariant.one_particle_representation",
    "covariant.cocycle_identity",
    "covariant.projective_law",
    "covariant.vacuum_expectation",
    "covariant.guarded_unitarity",
    "covariant.commutation_phase",
    "covariant.translation_projection",
];

pub fn system(cfg: &RunConfig) -> covqsc_core::Result<CovariantSystem> {
    CovariantSystem::new(CovariantConfig {
        mass: cfg.mass,
        seeds: cfg.grid.seeds.clone(),
        max_points: cfg.grid.max_orbit_points,
        generators: GeneratorSet::new(cfg.grid.orbit_generators.clone())?,
        cutoff: cfg.fock.cutoff,
        guard: cfg.fock.guard,
        ..CovariantConfig::default()
    })
}

/// Off-boundary regions for the default orbit grid.
fn regions(mass: f64) -> Vec<Region> {
    vec![
        Region::spatial_ball(mass, [0.0, 0.0, 0.37], 0.55),
        Region::spatial_half_space([0.0, 0.28, 0.96], 0.21),
        Region::spatial_box([-0.13, -0.11, -0.27], [0.19, 0.23, 0.91]),
    ]
}

fn pair_label(sys: &CovariantSystem, g: &GroupWord, h: &GroupWord) -> String {
    format!("{} ; {}", sys.generators().display(g), sys.generators().display(h))
}

pub fn run(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let cfg = ctx.config;
    let mut rng = ctx.rng(Suite::Covariant);
    let sys = match system(cfg) {
        Ok(s) => s,
        Err(e) => return IDS.iter().map(|id| ctx.check(id).fail(&e)).collect(),
    };
    let set = sys.generators().clone();
    let all = set.all_indices();
    let mut word = || set.random_word(&mut rng, &all, MAX_LEN);
    let sweep: Vec<GroupWord> = (0..12).map(|_| word()).collect();
    let pairs: Vec<(GroupWord, GroupWord)> = (0..20).map(|_| (word(), word())).collect();
    let regions = regions(cfg.mass);
    let mut out = Vec::new();

    let check = ctx.check("covariant.second_quantized_si");
    let jobs: Vec<_> = sweep.iter().flat_map(|w| regions.iter().map(move |e| (w, e))).collect();
    let samples = jobs
        .par_iter()
        .map(|(w, e)| {
            let dev = second_quantized_si_check(&sys, w, e).unwrap_or(f64::INFINITY);
            Sample::new(set.display(w), e.kind(), "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("covariant.field_covariance");
    let samples = pairs[..6]
        .par_iter()
        .map(|(h, g)| {
            let dev = field_covariance_deviation(&sys, h, g).unwrap_or(f64::INFINITY);
            Sample::new(pair_label(&sys, h, g), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("covariant.quadrature_reconstruction");
    let samples = sweep[..6]
        .par_iter()
        .map(|w| {
            let dev = field_operators(&sys, w)
                .map(|f| quadrature_reconstruction_deviation(&f))
                .unwrap_or(f64::INFINITY);
            Sample::new(set.display(w), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("covariant.one_particle_representation");
    let samples = pairs
        .par_iter()
        .map(|(g, h)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let ug = one_particle_unitary(&sys, g)?;
                let uh = one_particle_unitary(&sys, h)?;
                let ugh = one_particle_unitary(&sys, &g.concat(h))?;
                Ok(max_abs(&(&ug * &uh - ugh)).max(unitarity_defect(&ug)))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new(pair_label(&sys, g, h), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("covariant.cocycle_identity");
    let samples = pairs
        .par_iter()
        .map(|(g, h)| {
            let dev = cocycle_identity_deviation(&sys, g, h).unwrap_or(f64::INFINITY);
            Sample::new(pair_label(&sys, g, h), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    // dense Weyl operators, each formed once
    let dense = &pairs[..OPERATOR_PAIRS];
    let mut words: Vec<GroupWord> = dense
        .iter()
        .flat_map(|(g, h)| [g.clone(), h.clone(), g.concat(h)])
        .collect();
    words.sort_by_key(|w| w.to_string());
    words.dedup();
    let operators: covqsc_core::Result<BTreeMap<String, FockOperator>> = words
        .par_iter()
        .map(|w| Ok((w.to_string(), covariant_weyl(&sys, w)?)))
        .collect();
    let operators = match operators {
        Ok(ops) => ops,
        Err(e) => {
            for id in [
                "covariant.projective_law",
                "covariant.vacuum_expectation",
                "covariant.guarded_unitarity",
                "covariant.commutation_phase",
            ] {
                out.push(ctx.check(id).fail(&e));
            }
            out.push(translation_check(ctx, &sys, &regions, &mut rng));
            return out;
        }
    };
    let op = |w: &GroupWord| &operators[&w.to_string()];
    let guard = sys.guard();

    let check = ctx.check("covariant.projective_law");
    let samples = dense
        .par_iter()
        .map(|(g, h)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let phase = composition_phase(&sys.descriptor(g)?, &sys.descriptor(h)?);
                let lhs = op(g).then(op(h));
                Ok(lhs.guarded_deviation(&op(&g.concat(h)).scaled(phase), guard))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new(pair_label(&sys, g, h), format!("guard {guard}"), "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("covariant.vacuum_expectation");
    let samples = words
        .par_iter()
        .map(|w| {
            let dev = sys
                .cocycle_vector(w)
                .map(|v| (op(w).matrix[(0, 0)] - Complex64::new((-v.norm_squared() / 2.0).exp(), 0.0)).norm())
                .unwrap_or(f64::INFINITY);
            Sample::new(set.display(w), "", "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    let check = ctx.check("covariant.guarded_unitarity");
    let samples = words
        .par_iter()
        .map(|w| Sample::new(set.display(w), format!("guard {guard}"), "", op(w).guarded_unitarity_defect(guard)))
        .collect();
    out.push(check.finish(samples));

    // V_g V_h = e^{i Im<v_g, U_g v_h>} V_h V_g as usually quoted
    let check = ctx.check("covariant.commutation_phase");
    let samples = dense
        .par_iter()
        .map(|(g, h)| {
            let dev = (|| -> covqsc_core::Result<f64> {
                let phase = quoted_commutation_phase(&sys.descriptor(g)?, &sys.descriptor(h)?);
                Ok(operator_commutation_deviation(op(g), op(h), phase, guard))
            })()
            .unwrap_or(f64::INFINITY);
            Sample::new(pair_label(&sys, g, h), format!("guard {guard}"), "", dev)
        })
        .collect();
    out.push(check.finish(samples));

    out.push(translation_check(ctx, &sys, &regions, &mut rng));

    if let Some(dir) = ctx.dump_dir {
        if let Err(e) = dump_operators(&sys, dir) {
            eprintln!("warning: operator dump failed: {e}");
        }
    }
    out
}

fn translation_check<R: Rng>(ctx: &SuiteContext, sys: &CovariantSystem, regions: &[Region], rng: &mut R) -> CheckRecord {
    let check = ctx.check("covariant.translation_projection");
    let inputs: Vec<_> = (0..12)
        .map(|i| {
            let a = FourVector::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            (a, i % regions.len(), random_section(rng, sys.grid()))
        })
        .collect();
    let samples = inputs
        .par_iter()
        .map(|(a, r, phi)| {
            let e = &regions[*r];
            let dev = translation_projection_deviation(sys, a, e, phi).unwrap_or(f64::INFINITY) / phi.norm().max(1.0);
            Sample::new("", e.kind(), format!("{a}"), dev)
        })
        .collect();
    check.finish(samples)
}

/// Writes `V_X` and `Γ(U_X)` for every generator as matrix documents.
pub fn dump_operators(sys: &CovariantSystem, dir: &Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    for k in 0..sys.generators().len() {
        let w = GroupWord::letter(Letter::new(k));
        let name = sys.generators().generators()[k].name();
        let v = covariant_weyl(sys, &w).map_err(|e| e.to_string())?;
        let u = one_particle_unitary(sys, &w).map_err(|e| e.to_string())?;
        let gamma = second_quantization(sys.fock(), &u).map_err(|e| e.to_string())?;
        for (prefix, m) in [("V", &v), ("Gamma", &gamma)] {
            let path = dir.join(format!("{prefix}_{}.json", sanitize(&name)));
            let text = serde_json::to_string(&m.to_document()).map_err(|e| e.to_string())?;
            std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}
