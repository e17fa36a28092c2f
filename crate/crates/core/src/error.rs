use thiserror::Error;

/// Errors produced by the code constructions, decoders and experiments.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller passed arguments that violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),
    /// Field arithmetic outside the field's domain (e.g. inverting zero).
    #[error("domain error: {0}")]
    Domain(String),
    /// A field specification failed validation.
    #[error("invalid field spec: {reason}")]
    InvalidSpec { reason: String, witness: Option<u64> },
    /// Parameters that cannot be realized (field too small, rounding to zero, ...).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An exhaustive routine was asked to exceed its enumeration budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// The received word is outside the decoder's guarantee.
    #[error("decode failure: {0}")]
    DecodeFailure(String),
    /// A search-based construction found no acceptable candidate.
    #[error("construction failure: {0}")]
    ConstructionFailure(String),
    /// The leftmost square block of a generator matrix is singular.
    #[error("matrix is not full rank")]
    NotFullRank,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn decode(msg: impl Into<String>) -> Self {
        Error::DecodeFailure(msg.into())
    }

    /// True for failures that are properties of the data rather than of the call.
    pub fn is_domain_failure(&self) -> bool {
        matches!(
            self,
            Error::DecodeFailure(_) | Error::ConstructionFailure(_) | Error::Domain(_)
        )
    }
}
