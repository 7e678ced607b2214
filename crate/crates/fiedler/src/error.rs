use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector or matrix dimension does not match the expected size.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation requiring ground-truth labels was called on an
    /// unlabeled graph.
    #[error("graph has no labels; {op} requires them")]
    MissingLabels { op: &'static str },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A dense operation was asked for more storage than the guard allows.
    #[error("capacity exceeded: n = {n} is above the dense limit {limit}")]
    CapacityExceeded { n: usize, limit: usize },

    /// A matrix that must be symmetric is not, within tolerance.
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {deviation:e}")]
    Asymmetric { i: usize, j: usize, deviation: f64 },

    /// The iterative eigensolver exhausted its matvec budget.
    #[error("eigensolver did not converge in {iterations} matvecs (best residual {best_residual:e})")]
    NoConvergence {
        iterations: usize,
        best_residual: f64,
    },

    /// An eigenvector was passed in the wrong sign convention.
    #[error("orientation violated: <v2, g> = {inner:e} < 0")]
    OrientationViolated { inner: f64 },

    /// A rate over zero items is undefined.
    #[error("empty subset: {op} is undefined on zero vertices")]
    EmptySubset { op: &'static str },

    /// Pearson correlation against a (near-)constant vector is undefined.
    #[error("correlation undefined: {side} vector is constant")]
    ConstantVector { side: &'static str },

    /// A text file did not match the documented format.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// More than the tolerated fraction of Monte-Carlo trials failed.
    #[error("{failed} of {total} trials failed (limit is 1%)")]
    TooManyFailures { failed: usize, total: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
