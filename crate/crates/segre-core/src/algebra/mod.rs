//! Quadratic graded algebras presented by generators and degree-2 relations.
//!
//! The submodules split the work into three layers: free-algebra words and
//! homogeneous elements ([`word`]), immutable presentations with their
//! relation subspaces ([`presentation`]), and the per-degree basis machinery
//! that everything else multiplies through ([`cache`]).

mod cache;
mod presentation;
mod word;

pub use cache::DegreeCache;
pub use presentation::QuadraticPresentation;
pub(crate) use presentation::transform_relations;
pub use word::{FreeElement, GeneratorSet, Word};

use crate::linalg::LinAlgError;

/// Errors raised by presentation construction and degreewise computations.
#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("a generator set needs at least one generator")]
    EmptyGenerators,
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorIndex { index: usize, count: usize },
    #[error("expected a homogeneous element of degree {expected}, found degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("relation {index} has degree {degree}, relations must be quadratic")]
    NotQuadratic { index: usize, degree: usize },
    #[error("ideal slices only exist in degree 2 and above, got degree {0}")]
    DegreeTooSmall(usize),
    #[error("degree {degree} not cached (cache covers degrees up to {max_degree})")]
    DegreeNotCached { degree: usize, max_degree: usize },
    #[error("product degree {degree} exceeds the cached truncation {max_degree}")]
    DegreeOverflow { degree: usize, max_degree: usize },
    #[error("generator identification is not a bijection")]
    NotABijection,
    #[error("presentations have {left} and {right} generators, cannot compare")]
    GeneratorCountMismatch { left: usize, right: usize },
    #[error(transparent)]
    Lin(#[from] LinAlgError),
}
