//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RabiError {
    #[error("dimension must be at least {min}, got {got}")]
    Dimension { min: usize, got: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("operator violates its declared structure: {0}")]
    StructureViolation(String),

    #[error("operation requires a hermitian-flagged operator, got {0:?} flags")]
    NotHermitian(crate::operators::Structure),

    /// Truncation growth hit `max_dim` before the requested levels stabilized.
    /// Carries the per-level residuals of the last comparison.
    #[error(
        "spectrum did not converge below {level_tol:e} within max dimension {max_dim} \
         (last max residual {max_residual:e})"
    )]
    ConvergenceFailure {
        level_tol: f64,
        max_dim: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("grid does not cover the displaced wells: {0}")]
    GridCoverage(String),
}

pub type Result<T> = std::result::Result<T, RabiError>;
