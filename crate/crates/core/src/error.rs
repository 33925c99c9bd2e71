use thiserror::Error;

use crate::arith::{HalfInt, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("2j must be a nonnegative integer (got j = {0})")]
    InvalidHighestWeight(HalfInt),

    #[error("weight m = {m} is not a weight of the spin-{j} representation")]
    InvalidWeight { j: HalfInt, m: HalfInt },

    #[error("weight mu = {mu} is not in the series with lowest weight {kappa}")]
    InvalidSeriesWeight { kappa: String, mu: String },

    #[error("lowest weight kappa must be positive (got {0})")]
    InvalidLowestWeight(Rational),

    #[error("cutoff must be positive")]
    InvalidCutoff,

    #[error("cutoff {cutoff} is too small: at least {needed} required")]
    CutoffTooSmall { needed: usize, cutoff: usize },

    #[error("non-integer binomial argument: {0}")]
    NonIntegerBinomial(Rational),

    #[error("no such j in decomposition: {0}")]
    NotInDecomposition(HalfInt),

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("power series in a matrix that is not nilpotent")]
    NotNilpotent,

    #[error("tensor dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 2 for bad input, 3 for an internal failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::InexactDivision(_)
            | Error::NotNilpotent
            | Error::Inconsistent(_) => 3,
            _ => 2,
        }
    }
}
