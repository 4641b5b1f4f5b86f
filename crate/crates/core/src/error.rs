//! Error types shared across the crate.

use thiserror::Error;

/// A digit-condition violation found by an admissibility validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which condition failed, e.g. "digit-range" or "max-digit-adjacency".
    pub condition: &'static str,
    /// One-based digit index where the failure occurred.
    pub index: usize,
}

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// A decision (sign, floor, comparison) could not be settled within the
    /// precision budget of the values involved.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// A digit string failed admissibility validation.
    #[error("digit string not admissible: {}", describe_violations(.0))]
    NotAdmissible(Vec<Violation>),

    /// An operation needed more continued fraction digits than the finite
    /// expansion provides.
    #[error("insufficient continued fraction digits: needed {needed}, have {available}")]
    InsufficientDigits { needed: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

fn describe_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| format!("{} at digit {}", v.condition, v.index))
        .collect::<Vec<_>>()
        .join(", ")
}
