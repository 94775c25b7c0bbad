use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),

    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("polynomial is not symmetric: monomial {monomial} disagrees with its orbit")]
    SymmetryViolation { monomial: String },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("denominator did not cancel: {0}")]
    ResidualDenominator(String),

    #[error("target is not in the image of the generator monomials (row {row})")]
    NotInImage { row: String },

    #[error("images of generator monomials are linearly dependent (rank {rank} < {cols})")]
    LinearDependence { rank: usize, cols: usize },

    #[error("partition {partition} has a part smaller than {power}")]
    NotDivisible { partition: String, power: u32 },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("rank-count formula disagrees with brute force at p={p}, a={a}, r={r}: formula {formula}, count {count}")]
    LpOracleMismatch {
        p: u64,
        a: usize,
        r: usize,
        formula: String,
        count: u64,
    },

    #[error("solving {coefficient}: {reason}")]
    Solve { coefficient: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache entry {path} is corrupt: {reason}")]
    CacheCorrupt { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
