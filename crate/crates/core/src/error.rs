use thiserror::Error;

use crate::index_set::IndexSet;

/// Errors raised by the library.
///
/// Index sets and block indices carried by variants are zero-based; their
/// `Display` output is one-based to match the usual matrix notation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic domain mismatch: {0}")]
    ArithmeticDomain(String),

    #[error("operation not supported in the {0} domain")]
    UnsupportedDomain(&'static str),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("matrix is not Hermitian: entry ({row}, {col}) differs from the conjugate of its transpose", row = .row + 1, col = .col + 1)]
    Symmetry { row: usize, col: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("order {k} is outside 1..={n}")]
    InvalidOrder { k: usize, n: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("matrix is not 3-PMP; principal minor on {witness} is negative")]
    NotThreePmp { witness: IndexSet },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("block conditions violated: {0}")]
    ConditionsViolated(String),

    #[error("matrix is not constant on block ({row_block}, {col_block})", row_block = .row_block + 1, col_block = .col_block + 1)]
    NotBlockConstant { row_block: usize, col_block: usize },

    #[error("entry ({row}, {col}) has modulus other than 0 or 1", row = .row + 1, col = .col + 1)]
    EntriesNotUnimodular { row: usize, col: usize },

    #[error("the partition of identical columns does not refine the given partition")]
    RefinementHypothesisFailed,

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
