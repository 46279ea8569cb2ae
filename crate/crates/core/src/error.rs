use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid exponent p = {0}: must satisfy p >= 1 or p = inf")]
    InvalidExponent(String),
    #[error("exponent p = inf is not allowed here")]
    InfiniteExponent,
    #[error("exact arithmetic needs an integer exponent, got p = {0}")]
    NonIntegerExponent(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension must be at least {min}, got {got}")]
    InvalidDimension { min: usize, got: usize },
    #[error("label 0 is not a valid label (labels start at 1)")]
    ZeroLabel,
    #[error("value at {point} must be positive, got {value}")]
    NonPositiveValue { point: String, value: String },
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("function file: {0}")]
    Format(String),
    #[error("isoperimetric profile is not monotone at n = {0}")]
    NonMonotoneProfile(usize),
    #[error("isoperimetric profile too short: need {needed} entries, have {have}")]
    ProfileTooShort { needed: usize, have: usize },
    #[error("comparison tree too small: need vertex {needed}, tree has {size}")]
    TreeTooSmall { needed: u64, size: u64 },
    #[error("enumeration too short: need label {needed}, generated {have}")]
    EnumerationTooShort { needed: u64, have: u64 },
    #[error("combinatorial budget exceeded: {needed} subsets > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("gradient of f vanishes, ratio undefined")]
    ZeroGradient,
    #[error("({0}, {1}) is not a lattice edge")]
    NotAnEdge(u64, u64),
    #[error("audit failure: {0}")]
    Audit(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
