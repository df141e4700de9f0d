use alloc::string::String;
use core::fmt;

use crate::rules::QuotaFamily;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector had the wrong length for the given agent count.
    Dimension { expected: usize, actual: usize },
    /// Profile weights do not sum to one: `Σ C(n,k)·λ(k) ≠ 1`.
    Normalization { total: String },
    /// The marginal probability of a type is 0 or 1, so interim
    /// probabilities conditioned on that type are undefined.
    DegenerateMarginal,
    /// Count index outside `0..=n`.
    Index { index: usize, len: usize },
    /// Quota outside the admissible range of its family.
    QuotaRange {
        family: QuotaFamily,
        quota: usize,
        n: usize,
    },
    /// The target reduced form lies outside the requested polytope.
    Infeasible,
    /// Internal degeneracy that the construction rules out; reaching this
    /// indicates an invalid input slipped past validation.
    Degenerate(&'static str),
    /// Argument outside the mathematical domain of the operation.
    Domain(&'static str),
    /// Instance too large for an exhaustive sweep.
    Size { limit: usize, actual: usize },
    /// Malformed rational literal.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, actual } => {
                write!(f, "expected a vector of length {expected}, got {actual}")
            }
            Error::Normalization { total } => {
                write!(f, "profile weights sum to {total}, expected exactly 1")
            }
            Error::DegenerateMarginal => {
                write!(f, "marginal type probability must lie strictly in (0, 1)")
            }
            Error::Index { index, len } => {
                write!(f, "count index {index} out of range for {len} entries")
            }
            Error::QuotaRange { family, quota, n } => {
                write!(f, "quota {quota} outside the range of {family} for n={n}")
            }
            Error::Infeasible => write!(f, "reduced form is not implementable in this class"),
            Error::Degenerate(what) => write!(f, "degenerate case: {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Size { limit, actual } => {
                write!(f, "instance size {actual} exceeds exhaustive limit {limit}")
            }
            Error::Parse(s) => write!(f, "cannot parse rational from {s:?}"),
        }
    }
}

impl core::error::Error for Error {}
