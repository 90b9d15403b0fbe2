use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a valid argument")]
    Zero,
    #[error("{0} is not squarefree")]
    NotSquarefree(u128),
    #[error("radicand must be at least 2, got {0}")]
    RadicandTooSmall(u128),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u128),
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u128, u128),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("value does not fit in 128 bits")]
    Overflow,
    #[error("fundamental unit of Q(sqrt {0}) has norm -1")]
    NormMinusOne(u64),
    #[error("fundamental unit of Q(sqrt {0}) has denominator 2")]
    HalfIntegerUnit(u64),
    #[error("radicands must differ, both are {0}")]
    EqualRadicands(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("unknown theorem case {0:?}")]
    UnknownCase(String),
    #[error("inadmissible arguments: {0}")]
    Inadmissible(String),
    #[error("cannot parse condition {0:?}")]
    Condition(String),
    #[error("resultant is zero, the polynomials share a factor")]
    ZeroResultant,
    #[error("p = {0} has no coprimality certificate")]
    MissingCertificate(u64),
    #[error("integrity failure: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
