use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}: expected `[-]digits[/digits]` or `[-]digits[.digits]`")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// A space specification violates the admissible exponent range.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("{family} with s = {s} requires {bound}, got p = {p}")]
    ExponentOutOfRange {
        family: String,
        s: String,
        p: String,
        bound: &'static str,
    },
    #[error("conjugate exponent requires 1 < p, got p = {0}")]
    ConjugateDomain(String),
}

/// A query is malformed before any rule can be evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("domains differ: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("families differ: {0} vs {1}")]
    FamilyMismatch(String, String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("theta must lie strictly between 0 and 1, got {0}")]
    ThetaOutOfRange(String),
    #[error("endpoint {0} is not proved: {1}")]
    EndpointNotProved(usize, String),
    #[error("secondary exponents violate 1/r = 1/p + 1/q - 1 >= 0: {0}")]
    SecondaryExponents(String),
    #[error(transparent)]
    Query(#[from] QueryError),
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("dimension {0} unsupported (expected 1 or 2)")]
    Dimension(u32),
    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("period must be positive and finite, got {0}")]
    Period(f64),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("bad magic bytes, expected \"SOBG\"")]
    Magic,
    #[error("invalid filter bank: {0}")]
    FilterBank(String),
    #[error("{0} is only supported in dimension 1")]
    OneDimensionalOnly(&'static str),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Experiment setup or usage that cannot produce a meaningful report.
#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("refusing to verify unproved claim ({0})")]
    Unproved(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Query(#[from] QueryError),
}
