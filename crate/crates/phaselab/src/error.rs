//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PhaseLabError {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero signal where a nonzero signal is required")]
    ZeroSignal,

    #[error("empty domain mask")]
    EmptyMask,

    #[error("guard violation: {0}")]
    GuardViolation(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),

    #[error("iteration stagnated after {iterations} iterations (residual {residual:.3e})")]
    IterationStagnation { iterations: usize, residual: f64 },

    #[error("objective is non-smooth at this point: {0}")]
    NonSmoothObjective(String),

    #[error("pair graph hypothesis violated: {0}")]
    PairGraphViolation(String),

    #[error("translated mask leaves grid")]
    MaskLeavesGrid,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("malformed file: {0}")]
    MalformedFile(String),

    #[error("invalid config: {0} violation(s): {1}")]
    InvalidConfig(usize, String),
}

pub type Result<T> = std::result::Result<T, PhaseLabError>;
