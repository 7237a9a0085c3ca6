use thiserror::Error;

use crate::params::Violation;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum MeixnerError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter {name} must be nonzero")]
    ZeroParameter { name: String },

    #[error("not a point of the parameter set ({} violated condition(s)): {}", .0.len(), summarize(.0))]
    NotInParameterSet(Vec<Violation>),

    #[error("degenerate Gram-Schmidt step at column {column}: {reason}")]
    DegenerateStep { column: usize, reason: String },

    #[error("vanishing denominator in the triangular family at k = {k}")]
    ZeroDenominator { k: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("grid value missing at {point:?}")]
    MissingGridPoint { point: Vec<i64> },

    #[error("inner product did not converge within truncation cap {cap} (tail bound {tail})")]
    NoConvergence { cap: u32, tail: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn summarize(v: &[Violation]) -> String {
    v.iter()
        .take(3)
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
