use thiserror::Error;

/// Errors raised by group construction, parsing, and the criteria.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("cyclic factor must be at least 2, got {0}")]
    FactorTooSmall(u64),

    #[error("element does not belong to the group: {0}")]
    GroupMismatch(String),

    #[error("cyclotomic conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("integer square root of negative value {0}")]
    NegativeSquareRoot(String),

    #[error("invalid dicyclic group: {0}")]
    InvalidDicyclic(String),

    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    #[error("connection set does not generate the group")]
    NotGenerating,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
