use thiserror::Error;

/// Errors raised by the lattice, projector, solver and mode-space routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CiqError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("spectrum violates the real-field symmetry s(-n) = conj(s(n)) (deviation {deviation:.3e})")]
    SymmetryViolation { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("invalid quadratic system: {0}")]
    InvalidSystem(String),

    #[error("Hamiltonian is degenerate on the constraint surface: {0}")]
    DegenerateHamiltonian(String),

    #[error("dynamics is not a Hamiltonian flow of M (antisymmetry residual {residual:.3e})")]
    InconsistentSystem { residual: f64 },

    #[error("dynamics does not preserve the constraint surface (residual {residual:.3e})")]
    ConstraintDrift { residual: f64 },

    #[error("state is off the constraint surface (residual {residual:.3e})")]
    ConstraintViolation { residual: f64 },

    #[error("vector field is not transverse (longitudinal part {residual:.3e})")]
    NotTransverse { residual: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T, E = CiqError> = std::result::Result<T, E>;
