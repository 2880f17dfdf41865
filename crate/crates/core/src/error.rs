use thiserror::Error;

/// Errors produced by the monomial-ideal machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The arguments violate a precondition (dimension mismatch, unit or zero
    /// ideal where a proper one is required, caps exceeded, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The chain of associated primes of closures of powers did not reach the
    /// set of Rees-valuation centers within `cap` powers.
    #[error("associated primes of closures did not stabilize within {cap} powers")]
    NotStabilized { cap: u32 },

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
