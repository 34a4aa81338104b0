//! Error type shared by the transform and factorization layers.

use thiserror::Error;

/// Everything that can go wrong constructing or applying a transform.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HartleyError {
    /// A vector or matrix had a length that does not match its consumer.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A fast transform was requested for a length with no built-in kernel.
    #[error("unsupported length {n}: fast kernels exist for lengths {{3, 5, 6, 12, 24}}")]
    UnsupportedLength { n: usize },

    /// An input value was NaN or infinite.
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// An empty signal or spectrum was supplied.
    #[error("input must contain at least one element")]
    Empty,

    /// A batch mixed signals of different lengths.
    #[error("batch mixes lengths {first} and {other}")]
    MixedLengths { first: usize, other: usize },

    /// A complex spectrum failed the conjugate-symmetry test for real data.
    #[error("spectrum is not conjugate-symmetric: deviation {deviation:e} exceeds {tolerance:e}")]
    NotConjugateSymmetric { deviation: f64, tolerance: f64 },

    /// A sparse-matrix entry was out of range, non-finite, zero, or duplicated.
    #[error("invalid sparse entry at ({row}, {col}): {reason}")]
    InvalidEntry {
        row: usize,
        col: usize,
        reason: String,
    },

    /// Factorization stages or chain factors do not compose.
    #[error("factorization shapes do not compose: {0}")]
    ShapeMismatch(String),

    /// A chain factor row has no entries, which would make the operation
    /// count and the emitted program disagree.
    #[error("chain factor row is structurally empty (stage {stage}, factor {factor}, row {row})")]
    EmptyRow {
        stage: usize,
        factor: usize,
        row: usize,
    },

    /// The column-combine pass found no pair of columns agreeing in
    /// absolute value rowwise.
    #[error("no combinable column pair")]
    NoCombinablePair,

    /// The Hadamard split requires an even length.
    #[error("length {n} is odd; the half-length split needs an even length")]
    OddLength { n: usize },

    /// The Hadamard split requires entry (k, i+N/2) = (-1)^k * entry (k, i).
    #[error("matrix violates the half-length sign property at row {row}, col {col}")]
    SignProperty { row: usize, col: usize },

    /// A diagonal split needs every column to carry a single magnitude.
    #[error("column {col} mixes magnitudes; diagonal split is not applicable")]
    MixedMagnitudes { col: usize },
}
