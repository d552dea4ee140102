use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation
    /// (division by an interval containing zero, `ln` of a non-positive
    /// interval, `ψ(x)` with `x ≤ 0`, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is not defined for this kind of input, e.g.
    /// multiplying expansions that carry a `ln x` term.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// A caller-supplied argument is invalid (unknown id, grid point below
    /// the domain start, ...).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Text could not be parsed as a rational number or a document.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
