use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed arguments, unknown names, unreadable input files.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Floating-point routines that failed to converge or diverged.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A cross-check between two independent formulas disagreed; this
    /// always indicates a bug, never bad user input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
