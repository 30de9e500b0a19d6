use thiserror::Error;

/// Failures raised by the geometric and Fock-space constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rotation axis must be a unit vector (norm {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("mass must be positive, got {mass}")]
    NonPositiveMass { mass: f64 },

    #[error("momentum is not on the forward mass hyperboloid (residual |p.p - m^2| = {residual})")]
    OffShell { residual: f64 },

    #[error("transform does not stabilize the rest momentum (deviation {deviation})")]
    NotStabilizer { deviation: f64 },

    #[error("matrix is not unitary (defect {defect})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not hermitian (defect {defect})")]
    NotHermitian { defect: f64 },

    #[error("sections live on different grids")]
    GridMismatch,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("grid is not closed under `{word}`; regenerate the orbit grid with this generator set")]
    GridNotClosed { word: String },

    #[error("first-order cocycle datum is inconsistent with the one-particle unitary (deviation {deviation})")]
    InconsistentCocycle { deviation: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
