use thiserror::Error;

use crate::povm::MixtureDecomposition;
use crate::scalar::Real;

/// Errors raised by the numerical and domain operations of this crate.
///
/// Generic over the scalar type only because the overflow variant carries
/// the partial decomposition built so far.
#[derive(Debug, Error)]
pub enum Error<T: Real = f64> {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    /// The quadrature never reaches part of the Hilbert space, so the
    /// summed raw effects cannot be renormalized.
    #[error("coverage error: summed effects are singular on a subspace of dimension {deficient_dimension}")]
    Coverage { deficient_dimension: usize },

    /// The leaf budget ran out. The partial decomposition still reconstructs
    /// the input; its unfinished residuals are flagged as not certified.
    #[error("decomposition overflow: leaf budget of {max_leaves} exhausted")]
    DecompositionOverflow {
        max_leaves: usize,
        partial: Box<MixtureDecomposition<T>>,
    },
}

pub type Result<V, T = f64> = std::result::Result<V, Error<T>>;
