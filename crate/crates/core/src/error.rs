use thiserror::Error;

/// Errors raised anywhere in the library. The variant names the failing stage.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: u128, cap: u128 },
    #[error("group is not solvable")]
    NotSolvable,
    #[error("polynomial is not squarefree{0}")]
    NotSquarefree(String),
    #[error("polynomial must be monic with integer coefficients")]
    NotMonicIntegral,
    #[error("degree {0} is above the supported cap of 9")]
    DegreeCap(usize),
    #[error("local value is not rational")]
    NotRational,
    #[error("reconstructed value exceeds bound")]
    ExceedsBound,
    #[error("precision exhausted in {0}")]
    PrecisionExhausted(String),
    #[error("no relative invariant found for subgroup of order {sub} in group of order {group}")]
    InvariantSearch { group: u128, sub: u128 },
    #[error("no separating Tschirnhausen transformation found")]
    Separation,
    #[error("no suitable prime found below {0}")]
    NoPrime(u64),
    #[error("invalid tower: {0}")]
    Tower(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("session error: {0}")]
    Session(String),
}

pub type Result<T> = std::result::Result<T, Error>;
