use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at {0}")]
    Pole(String),
    #[error("denominator shares the factor {factor} with the modulus")]
    DenominatorNotCoprime { factor: String },
    #[error("zero factor in a denominator: {0}")]
    ZeroFactor(String),
    #[error("negative {p}-adic valuation: {context}")]
    NegativeValuation { p: u64, context: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
