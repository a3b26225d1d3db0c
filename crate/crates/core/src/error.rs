use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("degenerate code: {0}")]
    DegenerateCode(String),

    #[error("capacity exceeded: {what} needs {needed}, budget is {budget}")]
    Capacity {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("certification failed: obligation `{obligation}` does not hold")]
    CertificationFailure { obligation: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolation(msg.into())
    }

    /// True for failures of a mathematical check, as opposed to bad input or
    /// exhausted budgets.
    pub fn is_verification_failure(&self) -> bool {
        matches!(self, Error::CertificationFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
