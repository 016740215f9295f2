use thiserror::Error;

use crate::lie::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid type string `{0}`")]
    InvalidType(String),
    #[error("inadmissible rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("weight has {found} labels, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight {0} is not dominant")]
    NonDominantInput(Weight),
    #[error("level must be nonnegative, got {0}")]
    NegativeLevel(i64),
    #[error("weight {weight} is not in D_{level}")]
    WeightNotInLevel { weight: Weight, level: u32 },
    #[error("resource cap exceeded: {what} needs an estimated {estimate} entries (cap {cap})")]
    ResourceCapExceeded {
        what: String,
        estimate: u128,
        cap: usize,
    },
    #[error("affine fold did not converge for {0}")]
    NonConvergence(Weight),
    #[error("Weyl group of order {order} exceeds cap {cap}")]
    WeylGroupTooLarge { order: u128, cap: usize },
    #[error("Verlinde rounding residual {residual:e} exceeds tolerance {tolerance:e}")]
    RoundingFailure { residual: f64, tolerance: f64 },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("linear program needs a feasible origin (negative right-hand side in row {0})")]
    InfeasibleStart(usize),
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache file: {0}")]
    CacheFormat(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
