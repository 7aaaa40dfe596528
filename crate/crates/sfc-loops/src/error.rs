use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A curve or domain specification that cannot be constructed.
    #[error("invalid spec: {0}")]
    Spec(String),

    /// A curve index outside `[0, cells)`.
    #[error("curve index {index} out of range for grid of {cells} cells")]
    IndexRange { index: u64, cells: u64 },

    /// A grid coordinate outside `[0, side)`.
    #[error("coordinate {value} in dimension {dim} exceeds grid side {side}")]
    CoordRange { dim: usize, value: u64, side: u64 },

    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Dimension of a point or spec does not match the expected dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    /// A visitor aborted the traversal; carries the first failing tuple.
    #[error("visitor failed at tuple {tuple:?}: {message}")]
    Visitor { tuple: Vec<u64>, message: String },

    /// Input file could not be parsed.
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Verification against a reference oracle failed.
    #[error("verification failed: {0}")]
    VerifyFailed(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
