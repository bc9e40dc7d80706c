use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-contract input (bad vertex ids, wrong lengths, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Parse failure in one of the text formats, with the 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A structural check on the graph or boundary failed.
    #[error("validation error: {0}")]
    Validation(String),

    /// An iterative method stopped before reaching its tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// A point set or embedding does not span the plane.
    #[error("rank error: {0}")]
    Rank(String),

    /// Degenerate geometry (collinear or duplicate points).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Dense oracle refused because the problem exceeds the configured cap.
    #[error("size {size} exceeds the dense cap {cap}")]
    SizeCap { size: usize, cap: usize },

    /// The cyclic order of a boundary drawing disagrees with its convex hull.
    #[error("ordering error: {0}")]
    Ordering(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
