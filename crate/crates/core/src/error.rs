use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("singular matrix")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid index set: {0}")]
    InvalidIndices(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree budget exceeded: degree {degree} > budget {budget}")]
    BudgetExceeded { degree: String, budget: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structure constant did not divide exactly. This signals a bug, not bad input.
    #[error("classification inconsistency: {0}")]
    ClassificationInconsistency(String),

    #[error("value does not fit in a 64-bit entry")]
    Overflow,

    #[error("missing eigenvalue data for primes {0:?}")]
    MissingPrimeData(Vec<u64>),

    #[error("cache format: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by malformed user input (as opposed to budget or internal failures).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix
                | Error::DimensionMismatch(_)
                | Error::InvalidIndices(_)
                | Error::InvalidLabel(_)
                | Error::NotPrime(_)
                | Error::InvalidArgument(_)
                | Error::Precondition(_)
                | Error::MissingPrimeData(_)
        )
    }
}
