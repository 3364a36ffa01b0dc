use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("even characteristic is not supported (p = {0})")]
    EvenCharacteristic(u64),
    #[error("field order {order} exceeds the configured limit {limit}")]
    FieldTooLarge { order: u64, limit: u64 },
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("discrete logarithm of zero is undefined")]
    ZeroLog,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported graph rank k = {0} (expected 2..=5)")]
    UnsupportedRank(usize),
    #[error("matrix of size {size} exceeds the oracle limit {limit}")]
    OracleTooLarge { size: usize, limit: usize },
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
    #[error("eigenvalue {value} has imaginary residue {residue:e} above tolerance {tol:e}")]
    ImaginaryResidue { value: f64, residue: f64, tol: f64 },
    #[error("eigenvalue {value} of the halved graph is below -q = -{q}")]
    BelowRayleighBound { value: f64, q: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
