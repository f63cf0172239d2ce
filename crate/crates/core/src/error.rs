//! One error type for the whole crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong between field construction and report output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("q = {p}^{m} exceeds the size guard {guard} (raise RING_CODEBOOK_GUARD or pass --force)")]
    SizeGuard { p: u32, m: u32, guard: u32 },

    #[error("modulus must be a monic degree-{expected} polynomial with coefficients below p, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },

    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),

    #[error("element {g} does not generate the multiplicative group of order {order}")]
    NotPrimitive { g: u32, order: u32 },

    #[error("encoding {encoding} is out of range for a field of {q} elements")]
    ElementRange { encoding: u32, q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("discrete log of zero is undefined")]
    DiscreteLogOfZero,

    #[error("multiplicative characters are undefined at zero")]
    MultCharAtZero,

    #[error("({a0}, {a1}) is not a unit: units need a nonzero first component")]
    NonUnit { a0: u32, a1: u32 },

    #[error("rows are identical; inner products are predicted for distinct rows only")]
    ZeroDifference,

    #[error("row index {index} out of range for {rows} rows")]
    RowIndex { index: usize, rows: usize },

    #[error("need at least two rows to evaluate, got {0}")]
    TooFewRows(usize),

    #[error("{rows} rows exceed the exhaustive limit of {limit}; use sampled mode or force")]
    ExhaustiveTooLarge { rows: usize, limit: u64 },

    #[error("codebook would hold {entries} entries, above the build limit {limit}")]
    EntryBudget { entries: u64, limit: u64 },

    #[error("Welch bound needs 2 <= K <= N, got N = {n}, K = {k}")]
    WelchDomain { n: u64, k: u64 },

    #[error("ratio formulas need q >= 2, got {0}")]
    RatioDomain(u32),

    #[error("codebook file: {0}")]
    Schema(String),

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
