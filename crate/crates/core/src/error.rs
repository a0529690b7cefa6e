use thiserror::Error;

/// Errors raised when an input is not even a well-formed object of its kind.
///
/// Verification failures are not errors: they are reported through the
/// verification report types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} is {size}, above the configured ceiling {ceiling}; {hint}")]
    TooLarge {
        what: &'static str,
        size: u128,
        ceiling: u128,
        hint: &'static str,
    },
    #[error("{0} is not a prime power ({1})")]
    NotPrimePower(u64, String),
    #[error("division by zero in GF({0})")]
    ZeroInverse(u64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
