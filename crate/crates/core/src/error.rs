use thiserror::Error;

/// Errors produced by the synthesis and Gaussian-state routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid shape: expected {expected}, got {rows}x{cols}")]
    InvalidShape {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    /// The input lies outside the domain of the operation (non-unitary,
    /// non-Hermitian, non-symmetric, ...). `residual` is the measured violation.
    #[error("domain error: {what} (residual {residual:e})")]
    Domain { what: &'static str, residual: f64 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    /// A self-check inside an algorithm exceeded its tolerance.
    #[error("numerical failure in {stage}: residual {residual:e}")]
    NumericalFailure { stage: &'static str, residual: f64 },

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
