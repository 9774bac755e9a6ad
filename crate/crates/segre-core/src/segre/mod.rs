//! Twisted Segre products: presentations, componentwise models, bigraded
//! smash truncations, and the diagonal-rescaling comparison.
//!
//! The same product is realized twice on purpose. The presentation route
//! quotients a free algebra on pair generators by an explicitly transported
//! relation space; the component model multiplies pairs degreewise through
//! the seed extensions. [`cross_validate`] certifies that the two agree.

mod model;
mod presentation;
mod smash;
mod zhang;

pub use model::{
    cross_validate, cross_validate_presentation, CrossFailure, CrossReport, CrossRow,
    SegreComponentModel,
};
pub use presentation::{segre_presentation, SegrePresentation};
pub use smash::{density_window_check, DensityReport, DensityRow, SmashTruncation};
pub use zhang::zhang_twist_check;

use crate::algebra::AlgebraError;
use crate::linalg::LinAlgError;
use crate::twist::TwistError;

/// Errors raised while building Segre products and their comparisons.
#[derive(Debug, thiserror::Error)]
pub enum SegreError {
    #[error("seed does not descend to the quotient algebras (B side ok: {b_side_holds}, A side ok: {a_side_holds})")]
    InvalidTwist {
        b_side_holds: bool,
        a_side_holds: bool,
    },
    #[error("density arguments need a positive left degree and a nonzero right degree, got i={i}, s={s}")]
    BadDensityArguments { i: i64, s: i64 },
    #[error("component ({z_degree}, {b_degree}) lies outside the window (|z| <= {max_z}, b <= {max_b})")]
    ComponentOutOfWindow {
        z_degree: i64,
        b_degree: usize,
        max_z: usize,
        max_b: usize,
    },
    #[error("the rescaling comparison needs diagonal 2x2 blocks with D = P = 0")]
    RescalingRequiresDiagonal,
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lin(#[from] LinAlgError),
}
