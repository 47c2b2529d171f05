use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse polynomial {input:?}: {reason}")]
    ParsePoly { input: String, reason: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator must have constant term 1, got {0}")]
    NonUnitDenominator(String),
    #[error("series {0} has no inverse: constant term is 0")]
    NotInvertible(String),
    #[error("X divides g")]
    XDividesG,
    #[error("factorization of 2^{0}-1 required")]
    FactorizationRequired(usize),
    #[error("bad factorization of 2^{degree}-1: {reason}")]
    BadFactorization { degree: usize, reason: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("dimension {n} exceeds the bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid polynomial for this construction: {0}")]
    InvalidPolynomial(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("carry of row {0} lies outside its domain")]
    CarryOutOfDomain(usize),
    #[error("split not realizable")]
    SplitNotRealizable,
    #[error("feedthrough not realizable: {0}")]
    Feedthrough(String),
    #[error("insufficient horizon: need at least {needed} steps")]
    InsufficientHorizon { needed: usize },
    #[error("no primitive candidate within {trials} trials")]
    MaxTrialsExceeded { trials: u64 },
    #[error("format error: {0}")]
    Format(String),
}
