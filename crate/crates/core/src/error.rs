use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: wrong shape, non-Hermitian, mismatched lengths, bad index.
    #[error("validation error: {0}")]
    Validation(String),

    /// A function was evaluated outside its domain (e.g. `ln` of a negative eigenvalue).
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantity left the representable floating-point range.
    #[error("range error: {0}")]
    Range(String),

    /// Requested mean values can never be attained by any state.
    #[error("infeasible target: {0}")]
    Infeasible(String),

    /// An iterative kernel failed to converge.
    #[error("no convergence: {0}")]
    Convergence(String),

    /// Time integration produced an unphysical state.
    #[error("integration failure: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! validation {
    ($($arg:tt)*) => {
        $crate::error::Error::Validation(format!($($arg)*))
    };
}
pub(crate) use validation;
