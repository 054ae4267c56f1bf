use thiserror::Error;

/// Errors surfaced by fallible constructors and conversions.
///
/// Numeric values are carried as decimal strings so the error type stays
/// independent of the scalar the caller picked.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(String),

    #[error("digit {value} is out of range for prime {prime}")]
    DigitOutOfRange { value: String, prime: String },

    #[error("value {0} does not fit the chosen scalar type")]
    ScalarOverflow(String),

    #[error("invalid serialized stream: {0}")]
    InvalidSerialized(String),
}
