//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A text edge list contained a malformed line.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An edge referenced a vertex id outside `0..n`.
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: u64, n: usize },

    /// Generator parameters failed validation.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Mesh geometry violates `fd = R*C` or `p % fd == 0`.
    #[error("mesh config: {0}")]
    MeshConfig(String),

    /// TEPS is undefined for non-positive elapsed time.
    #[error("elapsed time must be positive, got {0}")]
    NonPositiveTime(f64),

    /// A binary graph cache was truncated or corrupt.
    #[error("binary cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
