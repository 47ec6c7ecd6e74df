use std::fmt;

use serde_json::json;
use thiserror::Error;

/// Common surface of the condition-violation reports, used for their JSON form.
pub trait Violation: fmt::Display {
    /// Short name of the violated condition, e.g. `"C3"` or `"length"`.
    fn condition(&self) -> &'static str;
    /// The offending 1-based indices, in the order they appear in the condition.
    fn indices(&self) -> Vec<usize>;
}

/// Serializes a validity report as `{valid, condition, indices}`.
pub fn report_json<V: Violation>(report: &std::result::Result<(), V>) -> serde_json::Value {
    match report {
        Ok(()) => json!({ "valid": true }),
        Err(v) => json!({
            "valid": false,
            "condition": v.condition(),
            "indices": v.indices(),
        }),
    }
}

/// First violated membership condition of an integer tuple against the
/// code-set conditions C1-C3. All indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeViolation {
    Length { expected: usize, actual: usize },
    C1 { i: usize },
    C2 { i: usize },
    C3 { i: usize, a: usize },
}

impl fmt::Display for CodeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeViolation::Length { expected, actual } => {
                write!(
                    f,
                    "length mismatch: expected {expected} entries, got {actual}"
                )
            }
            CodeViolation::C1 { i } => write!(f, "C1 violated at i={i}"),
            CodeViolation::C2 { i } => write!(f, "C2 violated at i={i}"),
            CodeViolation::C3 { i, a } => write!(f, "C3 violated at i={i}, a={a}"),
        }
    }
}

impl Violation for CodeViolation {
    fn condition(&self) -> &'static str {
        match self {
            CodeViolation::Length { .. } => "length",
            CodeViolation::C1 { .. } => "C1",
            CodeViolation::C2 { .. } => "C2",
            CodeViolation::C3 { .. } => "C3",
        }
    }

    fn indices(&self) -> Vec<usize> {
        match *self {
            CodeViolation::Length { .. } => vec![],
            CodeViolation::C1 { i } | CodeViolation::C2 { i } => vec![i],
            CodeViolation::C3 { i, a } => vec![i, a],
        }
    }
}

/// First violated bracket-vector condition among B1-B3. 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketViolation {
    Length { expected: usize, actual: usize },
    B1 { k: usize },
    B2 { i: usize },
    B3 { i: usize, j: usize },
}

impl fmt::Display for BracketViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketViolation::Length { expected, actual } => {
                write!(
                    f,
                    "length mismatch: expected {expected} entries, got {actual}"
                )
            }
            BracketViolation::B1 { k } => write!(f, "B1 violated at k={k}"),
            BracketViolation::B2 { i } => write!(f, "B2 violated at i={i}"),
            BracketViolation::B3 { i, j } => write!(f, "B3 violated at i={i}, j={j}"),
        }
    }
}

impl Violation for BracketViolation {
    fn condition(&self) -> &'static str {
        match self {
            BracketViolation::Length { .. } => "length",
            BracketViolation::B1 { .. } => "B1",
            BracketViolation::B2 { .. } => "B2",
            BracketViolation::B3 { .. } => "B3",
        }
    }

    fn indices(&self) -> Vec<usize> {
        match *self {
            BracketViolation::Length { .. } => vec![],
            BracketViolation::B1 { k } => vec![k],
            BracketViolation::B2 { i } => vec![i],
            BracketViolation::B3 { i, j } => vec![i, j],
        }
    }
}

/// First violated reduced-vector condition among R1-R2. 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedViolation {
    Length { expected: usize, actual: usize },
    R1 { i: usize },
    R2 { i: usize, j: usize },
}

impl fmt::Display for ReducedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducedViolation::Length { expected, actual } => {
                write!(
                    f,
                    "length mismatch: expected {expected} entries, got {actual}"
                )
            }
            ReducedViolation::R1 { i } => write!(f, "R1 violated at i={i}"),
            ReducedViolation::R2 { i, j } => write!(f, "R2 violated at i={i}, j={j}"),
        }
    }
}

impl Violation for ReducedViolation {
    fn condition(&self) -> &'static str {
        match self {
            ReducedViolation::Length { .. } => "length",
            ReducedViolation::R1 { .. } => "R1",
            ReducedViolation::R2 { .. } => "R2",
        }
    }

    fn indices(&self) -> Vec<usize> {
        match *self {
            ReducedViolation::Length { .. } => vec![],
            ReducedViolation::R1 { i } => vec![i],
            ReducedViolation::R2 { i, j } => vec![i, j],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition must have at least one part")]
    EmptyComposition,
    #[error("composition part {position} must be positive, got {value}")]
    NonPositivePart { position: usize, value: i64 },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("composition mismatch: {left} vs {right}")]
    CompositionMismatch { left: String, right: String },
    #[error("not an alpha-permutation: {reason}")]
    InvalidPermutation { reason: String },
    #[error("invalid code: {0}")]
    InvalidCode(CodeViolation),
    #[error("invalid bracket vector: {0}")]
    InvalidBracketVector(BracketViolation),
    #[error("invalid reduced vector: {0}")]
    InvalidReducedVector(ReducedViolation),
    #[error("n={n} exceeds the enumeration cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("poset is not a lattice: {x} and {y} have no unique {op}; maximal candidates: {candidates:?}")]
    NotALattice {
        x: String,
        y: String,
        op: &'static str,
        candidates: Vec<String>,
    },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_serialize_with_condition_and_indices() {
        let ok: std::result::Result<(), CodeViolation> = Ok(());
        assert_eq!(report_json(&ok), json!({ "valid": true }));

        let report: std::result::Result<(), BracketViolation> =
            Err(BracketViolation::B3 { i: 5, j: 6 });
        assert_eq!(
            report_json(&report),
            json!({ "valid": false, "condition": "B3", "indices": [5, 6] })
        );

        let report: std::result::Result<(), ReducedViolation> = Err(ReducedViolation::Length {
            expected: 4,
            actual: 2,
        });
        assert_eq!(
            report_json(&report),
            json!({ "valid": false, "condition": "length", "indices": [] })
        );
    }
}
