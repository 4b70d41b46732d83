//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operands act on different spaces.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Input violates a mathematical precondition (non-Hermitian operator,
    /// mixed state where a pure one is required, wrong operator family, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed user input (vertex out of range, unknown catalog name, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Dense construction above the configured qubit cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Text-format parse failure, with a 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Singular QFIM: the parameters spanning the null space cannot be
    /// estimated simultaneously. Carries the rank and an orthonormal basis
    /// of the null space (one vector per unidentifiable direction).
    #[error("singular QFIM (rank {rank} of {dim}): parameter combinations in the null space cannot be estimated simultaneously")]
    SingularQfim {
        rank: usize,
        dim: usize,
        null_space: Vec<Vec<f64>>,
    },

    /// Every measurement outcome fell below the probability guard.
    #[error("degenerate measurement: all outcome probabilities below the guard")]
    DegenerateMeasurement,

    /// The optimizer never saw a finite objective value.
    #[error("optimization failed: {0}")]
    OptimizationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
