//! Covariant quantum stochastic calculus building blocks: Lorentz
//! kinematics on the forward mass hyperboloid, induced representations
//! with their systems of imprimitivity, and the covariant Weyl
//! representation on a truncated bosonic Fock space.
//!
//! Conventions: metric `(+,-,-,-)`, energy first, natural units, inner
//! products antilinear in the first argument.

pub mod covariant_weyl;
pub mod dirac;
pub mod error;
pub mod fock;
pub mod group;
pub mod hyperboloid;
pub mod induced_rep;
pub mod linalg;
pub mod lorentz;
pub mod tolerance;

pub use error::{Error, Result};

/// Public operations by module, as `(module, operation)`. Drivers use this
/// list to confirm that every operation is exercised.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("lorentz", "minkowski_inner"),
    ("lorentz", "classify_orbit"),
    ("lorentz", "little_group_of"),
    ("lorentz", "rotation"),
    ("lorentz", "standard_boost"),
    ("lorentz", "wigner_rotation"),
    ("hyperboloid", "gamma_matrices"),
    ("hyperboloid", "fiber_basis"),
    ("hyperboloid", "build_grid"),
    ("hyperboloid", "section_inner"),
    ("hyperboloid", "transport_grid"),
    ("induced_rep", "little_group_rep"),
    ("induced_rep", "borel_section"),
    ("induced_rep", "cocycle_from_homomorphism"),
    ("induced_rep", "apply_u"),
    ("induced_rep", "apply_p"),
    ("induced_rep", "verify_imprimitivity"),
    ("fock", "exponential_vector"),
    ("fock", "creation"),
    ("fock", "annihilation"),
    ("fock", "quadratures"),
    ("fock", "second_quantization"),
    ("fock", "number_conservation"),
    ("fock", "weyl_operator"),
    ("fock", "weyl_commutation_check"),
    ("fock", "first_order_cocycle"),
    ("covariant_weyl", "one_particle_unitary"),
    ("covariant_weyl", "covariant_weyl"),
    ("covariant_weyl", "second_quantized_si_check"),
    ("covariant_weyl", "field_operators"),
];
