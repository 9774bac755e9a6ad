//! Degree-2 normal elements of a quadratic algebra.
//!
//! An element `w` of degree 2 is normal when `x_i w` lies in `w A_1` for
//! every generator `x_i`. Solving those membership problems at once yields
//! the degree-1 matrix `nu1` of the normalizing map `nu` with
//! `a w = w nu(a)`; once the generators satisfy that identity, every word
//! does, so the matrix is the whole certificate. The module verifies
//! candidates, extends and cross-checks certificates in higher degrees,
//! tests whether `nu1` extends to an algebra automorphism, measures
//! regularity on a degree window, and searches a small support for every
//! normal element it spans.

mod certificate;
mod search;

pub use certificate::{
    extend_automorphism, extend_checked_window, regularity_window, verify_normal,
    NormalCertificate, RegularityReport, RegularityRow,
};
pub use search::{search_normal_degree2, SearchReport, UnresolvedBranch};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinAlgError;

/// Failures of normality computations.
///
/// `NotNormal` and `NonUniqueNormalizer` are mathematical outcomes, not
/// defects: the first reports a generator whose left multiple escapes
/// `w A_1`, the second a degenerate right multiplication that admits many
/// normalizing maps and therefore no canonical certificate.
#[derive(Debug, Error)]
pub enum NormalityError {
    #[error("element is not normal: {generator} times the element leaves its right multiples")]
    NotNormal { generator: String },
    #[error("right multiplication by the element is degenerate, the normalizing map is not unique")]
    NonUniqueNormalizer,
    #[error("element reduces to zero modulo the relations")]
    ZeroElement,
    #[error("expected a homogeneous element of degree 2, got degree {degree}")]
    NotDegreeTwo { degree: usize },
    #[error("search support must contain at least one word")]
    EmptySupport,
    #[error("search support has {size} words, at most 3 are handled")]
    SupportTooLarge { size: usize },
    #[error("certificate fails to extend multiplicatively at degree {degree}")]
    ExtensionMismatch { degree: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lin(#[from] LinAlgError),
}
