//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by construction, validation, and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Vector or matrix dimensions do not match what the operation requires.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A domain-type invariant was violated at construction time.
    #[error("validation error: {0}")]
    Validation(String),

    /// A dense assembly would exceed the configured size guard.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// A matrix expected to be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian within tolerance (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    /// The mask family does not span the banded subspace; carries the index
    /// of the first rank-deficient frequency block.
    #[error("mask family is not spanning: frequency block {witness} is rank deficient")]
    NotSpanning { witness: usize },

    /// I/O failure while reading or writing an artifact file.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// (De)serialization failure.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
