//! Exact rational linear algebra: scalars, dense matrices, and subspaces.
//!
//! This layer fixes the conventions everything else relies on:
//!
//! * scalars are arbitrary-precision rationals, always in lowest terms,
//!   serialized as `"p/q"` strings (or `"p"` when the denominator is 1);
//! * matrices are dense and row-major;
//! * a subspace is canonically represented by its reduced row-echelon basis,
//!   so subspace equality is literal row comparison.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{Matrix, RrefOutcome, SolveOutcome};
pub use scalar::{ParseScalarError, Scalar};
pub use subspace::Subspace;

use thiserror::Error;

/// Errors from shape and dimension mismatches in the linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("rows have unequal lengths: row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },
}
