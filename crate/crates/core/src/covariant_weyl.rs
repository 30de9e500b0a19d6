//! Covariant Weyl operators `V_g = W(v(g), U_g)` over a rotation-closed
//! orbit grid, and the second-quantized system of imprimitivity.
//!
//! The one-particle space is the section space on the grid, flattened to
//! `C^{2n}` with the orthonormal basis `e_{i,b} / sqrt(w_i)`. Each rotation
//! generator `X` carries first-order cocycle data `(u0, u1)`; with
//! `U_X = exp(-iH)`, `v(X) = u0 + e^{-iH} u1 - u1`, and words extend `v`
//! through `v(gh) = v(g) + U_g v(h)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    self, first_order_cocycle, quadratures, second_quantization, second_quantize, CocycleParams, FockOperator,
    FockSpace, WeylDescriptor,
};
use crate::group::{Generator, GeneratorSet, GroupWord, Letter};
use crate::hyperboloid::{build_orbit_grid, section_distance, FiberedSection, MomentumGrid};
use crate::induced_rep::{apply_p, ImprimitivitySystem, Region};
use crate::linalg::{self, hermitian_generator, max_abs, max_abs_vec, CMatrix, CVector};
use crate::lorentz::{FourVector, LorentzTransform, TransformKind};
use crate::tolerance;

/// Tolerance on cocycle data consistency.
pub const COCYCLE_TOL: f64 = 1e-9;

/// Longest generator order searched when checking that `v` respects
/// `X^n = e`.
const MAX_ORDER: usize = 256;

/// First-order cocycle datum for one generator, in flattened coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorCocycle {
    /// Component fixed by `U_X`; contributes `t u0`.
    pub u0: CVector,
    /// Coboundary component; contributes `e^{-itH} u1 - u1`.
    pub u1: CVector,
}

#[derive(Clone, Debug)]
pub struct CovariantConfig {
    pub mass: f64,
    /// Spatial momenta whose orbit under the generators forms the grid.
    pub seeds: Vec<[f64; 3]>,
    pub seed_weight: f64,
    pub max_points: usize,
    pub generators: GeneratorSet,
    pub cutoff: u32,
    pub guard: u32,
    /// One datum per generator; `None` selects the default coboundary.
    pub cocycle: Option<Vec<GeneratorCocycle>>,
    /// Norm of the default coboundary vector `u1`.
    pub default_u1_norm: f64,
}

impl Default for CovariantConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            seeds: vec![[0.0, 0.0, 0.0], [0.0, 0.0, 0.8]],
            seed_weight: 1.0,
            max_points: 3,
            generators: GeneratorSet::new(vec![
                Generator::Rotation {
                    axis: 2,
                    angle: std::f64::consts::PI / 7.0,
                },
                Generator::Rotation {
                    axis: 0,
                    angle: std::f64::consts::PI,
                },
            ])
            .expect("coordinate axes are unit vectors"),
            cutoff: 4,
            guard: fock::DEFAULT_GUARD,
            cocycle: None,
            default_u1_norm: 0.1,
        }
    }
}

#[derive(Clone, Debug)]
struct LetterData {
    unitary: CMatrix,
    v: CVector,
}

pub struct CovariantSystem {
    grid: Arc<MomentumGrid>,
    si: ImprimitivitySystem,
    fock: Arc<FockSpace>,
    generators: GeneratorSet,
    guard: u32,
    data: Vec<GeneratorCocycle>,
    forward: Vec<LetterData>,
    backward: Vec<LetterData>,
}

impl std::fmt::Debug for CovariantSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CovariantSystem")
            .field("points", &self.grid.len())
            .field("one_particle_dim", &self.fock.one_particle_dim())
            .field("cutoff", &self.fock.cutoff())
            .field("guard", &self.guard)
            .finish()
    }
}

/// Matrix of `apply_u(g, ·)` in the flattened basis of `grid`.
fn moving_grid_matrix(si: &ImprimitivitySystem, grid: &Arc<MomentumGrid>, g: &LorentzTransform, word: &str) -> Result<CMatrix> {
    let n = grid.len();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for b in 0..2 {
            let mut flat = vec![Complex64::new(0.0, 0.0); 2 * n];
            flat[2 * j + b] = Complex64::new(1.0, 0.0);
            let moved = si.apply_u(g, &FiberedSection::unflatten(grid.clone(), &flat)?)?;
            let target = moved.grid().points()[j];
            let i = grid
                .find(&target, tolerance::GRID_MATCH)
                .ok_or_else(|| Error::GridNotClosed { word: word.to_string() })?;
            let scale = grid.quadrature_weight(i).sqrt();
            for a in 0..2 {
                m[(2 * i + a, 2 * j + b)] = moved.values()[j][a] * scale;
            }
        }
    }
    Ok(m)
}

/// Smallest `n` with `g^n = e` (vector and spinor parts), if any.
fn order_of(g: &LorentzTransform) -> Option<usize> {
    let mut acc = g.clone();
    for n in 1..=MAX_ORDER {
        let id = LorentzTransform::identity();
        if acc.deviation(&id) <= COCYCLE_TOL && acc.spinor_deviation(&id) <= COCYCLE_TOL {
            return Some(n);
        }
        acc = acc.compose(g);
    }
    None
}

impl CovariantSystem {
    pub fn new(config: CovariantConfig) -> Result<Self> {
        if config.generators.is_empty() {
            return Err(Error::InvalidParameter {
                name: "generators",
                reason: "at least one rotation generator is required".into(),
            });
        }
        if !config.generators.generators().iter().all(Generator::is_rotation) {
            return Err(Error::InvalidParameter {
                name: "generators",
                reason: "only rotations are lifted to Fock space".into(),
            });
        }
        if config.guard > config.cutoff {
            return Err(Error::InvalidParameter {
                name: "guard",
                reason: format!("guard band {} exceeds cutoff {}", config.guard, config.cutoff),
            });
        }
        let transforms: Vec<LorentzTransform> = (0..config.generators.len())
            .map(|i| config.generators.letter_transform(Letter::new(i)).clone())
            .collect();
        let grid = Arc::new(build_orbit_grid(
            config.mass,
            &config.seeds,
            config.seed_weight,
            &transforms,
            config.max_points,
        )?);
        let si = ImprimitivitySystem::spinor(config.mass)?;
        let dim = 2 * grid.len();
        let fock = FockSpace::new(dim, config.cutoff)?;

        let data = match config.cocycle {
            Some(d) => {
                if d.len() != config.generators.len() {
                    return Err(Error::InvalidParameter {
                        name: "cocycle",
                        reason: format!("{} data for {} generators", d.len(), config.generators.len()),
                    });
                }
                d
            }
            None => {
                // coboundary of a vector on the second basis section
                let mut u1 = CVector::zeros(dim);
                u1[1.min(dim - 1)] = Complex64::new(config.default_u1_norm, 0.0);
                vec![
                    GeneratorCocycle {
                        u0: CVector::zeros(dim),
                        u1,
                    };
                    config.generators.len()
                ]
            }
        };

        let mut forward = Vec::with_capacity(data.len());
        for (k, datum) in data.iter().enumerate() {
            if datum.u0.len() != dim || datum.u1.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: datum.u0.len().min(datum.u1.len()),
                });
            }
            let g = &transforms[k];
            let name = config.generators.generators()[k].name();
            let unitary = moving_grid_matrix(&si, &grid, g, &name)?;
            let v = lift_datum(&unitary, datum)?;
            if let Some(n) = order_of(g) {
                // v(X^n) = Σ_k U^k v(X) must vanish
                let mut acc = CVector::zeros(dim);
                for _ in 0..n {
                    acc = &v + &unitary * acc;
                }
                let deviation = max_abs_vec(&acc);
                if deviation > COCYCLE_TOL {
                    return Err(Error::InconsistentCocycle { deviation });
                }
            }
            forward.push(LetterData { unitary, v });
        }
        let backward = forward
            .iter()
            .map(|d| {
                let inv = d.unitary.adjoint();
                LetterData {
                    v: -(&inv * &d.v),
                    unitary: inv,
                }
            })
            .collect();

        Ok(Self {
            grid,
            si,
            fock,
            generators: config.generators,
            guard: config.guard,
            data,
            forward,
            backward,
        })
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn si(&self) -> &ImprimitivitySystem {
        &self.si
    }

    pub fn fock(&self) -> &Arc<FockSpace> {
        &self.fock
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn cocycle_data(&self) -> &[GeneratorCocycle] {
        &self.data
    }

    pub fn one_particle_dim(&self) -> usize {
        self.fock.one_particle_dim()
    }

    fn letter(&self, l: Letter) -> &LetterData {
        if l.inverse {
            &self.backward[l.index]
        } else {
            &self.forward[l.index]
        }
    }

    fn check_word(&self, word: &GroupWord) -> Result<()> {
        if let Some(l) = word.letters().iter().find(|l| l.index >= self.generators.len()) {
            return Err(Error::InvalidParameter {
                name: "word",
                reason: format!("letter index {} out of range", l.index),
            });
        }
        Ok(())
    }

    /// `(v(g), U_g)` by the cocycle rule along the word.
    pub fn descriptor(&self, word: &GroupWord) -> Result<WeylDescriptor> {
        self.check_word(word)?;
        let dim = self.one_particle_dim();
        let mut v = CVector::zeros(dim);
        let mut u = CMatrix::identity(dim, dim);
        for &l in word.letters().iter().rev() {
            let d = self.letter(l);
            v = &d.v + &d.unitary * v;
            u = &d.unitary * u;
        }
        WeylDescriptor::new(v, u)
    }

    pub fn cocycle_vector(&self, word: &GroupWord) -> Result<CVector> {
        Ok(self.descriptor(word)?.u().clone())
    }
}

/// `v(X)` from the datum, checking it against `U_X`.
fn lift_datum(unitary: &CMatrix, datum: &GeneratorCocycle) -> Result<CVector> {
    let h = hermitian_generator(unitary)?;
    let fixed = max_abs_vec(&(&h * &datum.u0));
    if fixed > COCYCLE_TOL {
        return Err(Error::InconsistentCocycle { deviation: fixed });
    }
    let params = CocycleParams {
        u0: CVector::zeros(0),
        blocks: vec![(datum.u1.clone(), h)],
    };
    let (v1, u1) = first_order_cocycle(1.0, &params)?;
    let (v2, _) = first_order_cocycle(2.0, &params)?;
    let deviation = max_abs(&(&u1 - unitary)).max(max_abs_vec(&(&v2 - &v1 - &u1 * &v1)));
    if deviation > COCYCLE_TOL {
        return Err(Error::InconsistentCocycle { deviation });
    }
    Ok(&datum.u0 + v1)
}

/// Matrix of `U_g` on the flattened section space. Only rotation words are
/// accepted; the grid must be closed under them.
pub fn one_particle_unitary(sys: &CovariantSystem, word: &GroupWord) -> Result<CMatrix> {
    sys.check_word(word)?;
    let g = sys.generators.evaluate(word);
    if g.kind() != TransformKind::Rotation {
        return Err(Error::InvalidParameter {
            name: "word",
            reason: "only rotation words act on the orbit grid".into(),
        });
    }
    moving_grid_matrix(&sys.si, &sys.grid, &g, &sys.generators.display(word))
}

/// `V_g = W(v(g), U_g)`.
pub fn covariant_weyl(sys: &CovariantSystem, word: &GroupWord) -> Result<FockOperator> {
    fock::weyl_operator(&sys.fock, &sys.descriptor(word)?)
}

/// `χ_E` as an orthogonal projection on the flattened section space.
pub fn region_projection(sys: &CovariantSystem, region: &Region) -> CMatrix {
    let n = sys.grid.len();
    let mut p = CMatrix::zeros(2 * n, 2 * n);
    for (i, q) in sys.grid.points().iter().enumerate() {
        if region.contains(q) {
            p[(2 * i, 2 * i)] = Complex64::new(1.0, 0.0);
            p[(2 * i + 1, 2 * i + 1)] = Complex64::new(1.0, 0.0);
        }
    }
    p
}

/// `‖Γ(U_g) Γ(P_E) Γ(U_g)^{-1} - Γ(P_{gE})‖_max`.
pub fn second_quantized_si_check(sys: &CovariantSystem, word: &GroupWord, region: &Region) -> Result<f64> {
    let u = one_particle_unitary(sys, word)?;
    let g = sys.generators.evaluate(word);
    let gamma = second_quantization(&sys.fock, &u)?;
    let pe = second_quantize(&sys.fock, &region_projection(sys, region))?;
    let pge = second_quantize(&sys.fock, &region_projection(sys, &region.transformed(&g)))?;
    let lhs = gamma.then(&pe).then(&gamma.adjoint());
    Ok(lhs.deviation(&pge))
}

/// Ladder operators and quadratures of `v(g)`.
#[derive(Clone, Debug)]
pub struct FieldOperators {
    pub a: FockOperator,
    pub a_dag: FockOperator,
    pub p: FockOperator,
    pub q: FockOperator,
}

pub fn field_operators(sys: &CovariantSystem, word: &GroupWord) -> Result<FieldOperators> {
    let v = sys.cocycle_vector(word)?;
    let a_dag = fock::creation(&sys.fock, &v)?;
    let (p, q) = quadratures(&sys.fock, &v)?;
    Ok(FieldOperators {
        a: a_dag.adjoint(),
        a_dag,
        p,
        q,
    })
}

/// `‖Γ(U_h) a†(v(g)) Γ(U_h)^{-1} - a†(U_h v(g))‖_max`.
pub fn field_covariance_deviation(sys: &CovariantSystem, h: &GroupWord, g: &GroupWord) -> Result<f64> {
    let u = one_particle_unitary(sys, h)?;
    let v = sys.cocycle_vector(g)?;
    field_covariance_for(&sys.fock, &u, &v)
}

/// `‖Γ(U) a†(u) Γ(U)^{-1} - a†(Uu)‖_max` for explicit one-particle data.
pub fn field_covariance_for(space: &Arc<FockSpace>, u: &CMatrix, v: &CVector) -> Result<f64> {
    let gamma = second_quantization(space, u)?;
    let lhs = gamma.then(&fock::creation(space, v)?).then(&gamma.adjoint());
    Ok(lhs.deviation(&fock::creation(space, &(u * v))?))
}

/// `‖½(q - ip) - a†‖_max` for the field operators of `v(g)`.
pub fn quadrature_reconstruction_deviation(fields: &FieldOperators) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let rebuilt = (&fields.q.matrix - &fields.p.matrix * i) * Complex64::new(0.5, 0.0);
    max_abs(&(rebuilt - &fields.a_dag.matrix))
}

/// `‖V_{g1} V_{g2} - e^{-i Im<v1, U1 v2>} V_{g1 g2}‖_max`, guard-banded.
pub fn projective_law_deviation(sys: &CovariantSystem, g1: &GroupWord, g2: &GroupWord) -> Result<f64> {
    let w1 = sys.descriptor(g1)?;
    let w2 = sys.descriptor(g2)?;
    let lhs = covariant_weyl(sys, g1)?.then(&covariant_weyl(sys, g2)?);
    let rhs = covariant_weyl(sys, &g1.concat(g2))?.scaled(fock::composition_phase(&w1, &w2));
    Ok(lhs.guarded_deviation(&rhs, sys.guard))
}

/// `‖V_g V_h - e^{i Im<v_g, U_g v_h>} V_h V_g‖_max`, guard-banded.
pub fn covariant_commutation_check(sys: &CovariantSystem, g: &GroupWord, h: &GroupWord) -> Result<f64> {
    fock::weyl_commutation_check(&sys.fock, &sys.descriptor(g)?, &sys.descriptor(h)?, sys.guard)
}

/// `|<Ω, V_g Ω> - e^{-‖v(g)‖²/2}|`.
pub fn vacuum_expectation_deviation(sys: &CovariantSystem, word: &GroupWord) -> Result<f64> {
    let v = sys.cocycle_vector(word)?;
    let vg = covariant_weyl(sys, word)?;
    let expected = (-v.norm_squared() / 2.0).exp();
    Ok((vg.matrix[(0, 0)] - Complex64::new(expected, 0.0)).norm())
}

/// `max over g, h` of the cocycle identity `v(gh) - v(g) - U_g v(h)`.
pub fn cocycle_identity_deviation(sys: &CovariantSystem, g: &GroupWord, h: &GroupWord) -> Result<f64> {
    let wg = sys.descriptor(g)?;
    let wh = sys.descriptor(h)?;
    let wgh = sys.descriptor(&g.concat(h))?;
    let mut out = max_abs_vec(&(wgh.u() - wg.u() - wg.unitary() * wh.u()));
    out = out.max(max_abs(&(wgh.unitary() - wg.unitary() * wh.unitary())));
    Ok(out)
}

/// `‖T_a P_E φ - P_E T_a φ‖` for the one-particle translation action.
pub fn translation_projection_deviation(
    sys: &CovariantSystem,
    a: &FourVector,
    region: &Region,
    phi: &FiberedSection,
) -> Result<f64> {
    let lhs = sys.si.apply_translation(a, &apply_p(region, phi));
    let rhs = apply_p(region, &sys.si.apply_translation(a, phi));
    section_distance(&lhs, &rhs)
}

/// Inner product of the flattened one-particle vectors, for reports.
pub fn one_particle_inner(u: &CVector, v: &CVector) -> Complex64 {
    linalg::inner(u, v)
}
