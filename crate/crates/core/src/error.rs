use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that cannot be interpreted at all (bad cycle strings, degree clashes, ...).
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A configured enumeration bound was exceeded.
    #[error("capacity exceeded: {what} is {actual}, bound is {bound}")]
    Capacity {
        what: &'static str,
        actual: u64,
        bound: u64,
    },

    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Internal consistency check failed (data that contradicts itself).
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("not found: {0}")]
    NotFound(String),

    /// Inputs that are valid but not covered by the encoded tables.
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, actual: u64, bound: u64) -> Self {
        Error::Capacity {
            what,
            actual,
            bound,
        }
    }
}
