use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad user-supplied value (non-finite field, degenerate mesh, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Coefficients outside a validity window or otherwise unusable.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Structurally impossible assembly request (empty boundary, size mismatch).
    #[error("assembly error: {0}")]
    Assembly(String),
    /// A linear solve or factorization failed.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Scenario configuration could not be parsed.
    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
