use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} outside the supported range 2 < p < 2^31")]
    PrimeOutOfRange(u64),

    #[error("prime {prime} must exceed the generator degree {degree}")]
    PrimeTooSmall { prime: u64, degree: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("a degree cap is required for {0}")]
    MissingCap(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}
