//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in field, group, or genus computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range (1..=18, p^k must fit in 62 bits)")]
    DegreeOutOfRange(usize),
    #[error("characteristic {0} too large (supported p < 256)")]
    UnsupportedPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements from different field contexts")]
    CtxMismatch,
    #[error("multiplicative order of zero is undefined")]
    ZeroElement,
    #[error("GF({p}^{sub}) is not a subfield of GF({p}^{sup})")]
    NotASubfield { p: u64, sub: usize, sup: usize },
    #[error("polynomial degree {0} exceeds the supported bound 3")]
    DegreeTooHigh(usize),
    #[error("field of size {0} too large for this operation")]
    FieldTooLarge(u64),
    #[error("point coordinates do not lie in the expected field")]
    FieldMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not unitary for the given Hermitian model")]
    NotUnitary,
    #[error("generated group exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generators come from mixed (q, model) contexts")]
    MixedContext,
    #[error("projective order exceeded cap {0}; input is likely not unitary")]
    OrderCapExceeded(u64),
    #[error("cannot classify the identity element")]
    IdentityElement,
    #[error("element violates the geometric classification: {0}")]
    Unclassifiable(String),
    #[error("element of order {0} is not tame (p divides the order)")]
    WildElement(u64),
    #[error("Riemann-Hurwitz division is not integral: {detail}")]
    NonIntegralGenus { detail: String },
    #[error("formula hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("bounded search exhausted its budget without a match")]
    SearchFailed,
    #[error("lambda parameter invalid: {0}")]
    LambdaInvalid(String),
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("io error: {0}")]
    Io(String),
    #[error("malformed generator file: {0}")]
    BadGeneratorFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::BadGeneratorFile(e.to_string())
    }
}
