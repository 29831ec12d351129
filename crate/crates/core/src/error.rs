use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vector length {0} outside the supported range 2..=6")]
    BadLength(usize),
    #[error("entry {value} exceeds the magnitude bound {bound}")]
    EntryOutOfRange { value: i64, bound: i64 },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("kappa is undefined for the zero vector")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("oracle search box has {0} points, limit is {1}")]
    OracleBoxTooLarge(u128, u128),
    #[error("trace imbalance: sum {0} vs sum {1}")]
    TraceImbalance(i64, i64),
    #[error("the defining circle action is not almost free (p - q_sigma = 0 for some sigma)")]
    NotOrbifold,
    #[error("E_{{p,q}} is not a manifold: gcd condition fails for sigma = {0}")]
    NotManifold(String),
    #[error("the circle action is not almost free")]
    NotAlmostFree,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("empty search space")]
    EmptySearchSpace,
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
