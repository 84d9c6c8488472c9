//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by scalar evaluators, matrix kernels and the registry.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input violates a mathematical domain requirement (e.g. `a <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// An intermediate quantity left the representable double range.
    #[error("range error: {0}")]
    Range(String),

    /// A refinement depth outside the supported range was requested.
    #[error("depth error: {0}")]
    Depth(String),

    /// Matrix dimensions are inconsistent or an input has the wrong shape.
    #[error("shape error: {0}")]
    Shape(String),

    /// A matrix required to be (semi)definite is not.
    #[error("definiteness error: {0}")]
    Definiteness(String),

    /// An iterative kernel failed to reach its accuracy target.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// A parameter falls outside every branch interval of a statement.
    #[error("branch error: {0}")]
    Branch(String),

    /// Input is degenerate for the requested evaluation (e.g. zero norm
    /// inside a Kantorovich ratio).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A stated precondition does not hold (e.g. spectral bounds that do not
    /// certify the inputs).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The registry has no entry with the requested id.
    #[error("unknown entry: {0}")]
    UnknownEntry(String),

    /// A grid or CLI parameter cannot be used with the requested entry.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
