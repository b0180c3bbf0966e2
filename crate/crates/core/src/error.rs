use thiserror::Error;

/// Errors raised by network construction, bound evaluation and the optimizers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("network has {0} nodes; at most 16 are supported")]
    TooManyNodes(usize),

    #[error("joint state count {count} exceeds the cap of {cap}")]
    StateOverflow { count: u128, cap: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("no feasible point: {0}")]
    NoFeasiblePoint(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::TooManyNodes(_)
                | Error::StateOverflow { .. }
                | Error::Invalid(_)
                | Error::Normalization(_)
                | Error::Usage(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
