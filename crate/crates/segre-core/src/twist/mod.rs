//! Twisting seeds, their tensor-power extensions, and validity checks.
//!
//! A seed is an invertible linear map from U⊗V to V⊗U. When its extensions
//! carry the relation spaces of the two algebras into themselves in the
//! required way (see [`validate_descent`]), the seed induces a twisting map
//! between the full algebras and everything downstream (Segre products,
//! smash truncations) is well defined.

mod blocks;
mod descent;
mod seed;
mod sigma;

pub use blocks::{normalize_diagonal, Twist2x2, TwistConditionReport};
pub use descent::{validate_descent, DescentReport, TwistData};
pub use seed::{ExtensionOp, TwistingSeed};
pub use sigma::{invert_sigma, sigma_of, validate_sigma, SigmaHom};

use crate::algebra::AlgebraError;
use crate::linalg::LinAlgError;

/// Errors raised while building or analyzing twists.
#[derive(Debug, thiserror::Error)]
pub enum TwistError {
    #[error("seed matrix must be {expected}x{expected}, got {rows}x{cols}")]
    SeedShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("seed matrix is not invertible")]
    SeedNotInvertible,
    #[error("side {side} has {gens} generators but the seed expects {seed}")]
    SideDimensionMismatch {
        side: char,
        seed: usize,
        gens: usize,
    },
    #[error("operation requires a 2x2-by-2x2 seed, got dimensions {dim_v}x{dim_u}")]
    NotTwoByTwo { dim_v: usize, dim_u: usize },
    #[error("matrices do not commute, cannot triangularize simultaneously")]
    NonCommuting,
    #[error("eigenvalues are irrational (discriminant {discriminant} has no rational square root)")]
    IrrationalEigenvalues { discriminant: String },
    #[error("generator action matrices are inconsistent: {0}")]
    SigmaInversion(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lin(#[from] LinAlgError),
}
