use thiserror::Error;

use crate::classify::RelationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {dimension} variables")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("matrix is not in {algebra}: {violations:?}")]
    NotInAlgebra {
        algebra: String,
        violations: Vec<String>,
    },

    #[error("point lies outside the domain: {0}")]
    OutsideDomain(String),

    #[error("symmetry relations violated: {}", .0.violated.join("; "))]
    RelationsViolated(RelationReport),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("operator has derivative order {0} after normal ordering; only first order is supported")]
    OrderTooHigh(u32),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}
