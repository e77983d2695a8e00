use thiserror::Error;

/// Errors produced by finsym computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("enumeration guard exceeded: {required} states requested, limit is {limit}")]
    GuardExceeded { required: u128, limit: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("iteration did not converge after {0} steps")]
    NoConvergence(usize),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
