use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("degenerate Möbius map (ad - bc = 0)")]
    DegenerateMobius,
    #[error("zero denominator in transfer function")]
    ZeroDenominator,
    #[error("zero polynomial has no stability verdict")]
    ZeroPolynomial,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("ill-posed interconnection: 1 + pc vanishes identically")]
    IllPosed,
    #[error("empty plant set")]
    EmptyPlantSet,
    #[error("parameter box has dimension {found}, template needs {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad bracket: no controller found at the upper end delta = {0}")]
    BadBracket(String),
    #[error("properization failed: {0}")]
    ProperizeFailed(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
