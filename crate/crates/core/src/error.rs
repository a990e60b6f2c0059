use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Unsupported family, rank, field size or similar setup problem.
    #[error("configuration error: {0}")]
    Config(String),
    /// An operation was called outside its precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The hypothesis of a theorem-backed verdict does not hold.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    /// Two independent computations disagree.
    #[error("cross-validation failed: {0}")]
    CrossValidation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! contract {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Contract(format!($($arg)+)));
        }
    };
}
pub(crate) use contract;
