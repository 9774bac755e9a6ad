//! Comparison of a diagonally twisted Segre product with a graded
//! rescaling of the untwisted one.

use crate::linalg::{Matrix, Scalar, Subspace};
use crate::twist::{Twist2x2, TwistData, TwistingSeed};

use super::{segre_presentation, SegreError};

fn is_diagonal_matrix(m: &Matrix) -> bool {
    m.get(0, 1).is_zero() && m.get(1, 0).is_zero()
}

/// Decides whether the twisted Segre product of a scalar-diagonal 2×2
/// twist is a degreewise rescaling of the plain Segre product of the same
/// sides.
///
/// The candidate rescaling sends X, Y, Z, W to themselves scaled by the
/// inverses of q11, q22, c11, c22. The check rescales the second letter of
/// every twisted relation accordingly and compares the resulting span with
/// the plain Segre relations; `true` means the two products differ only by
/// that change of generators, so their graded module categories agree.
///
/// The seed must be built from diagonal blocks with D = P = 0 and C, Q
/// themselves diagonal; anything else is rejected.
pub fn zhang_twist_check(twist: &TwistData) -> Result<bool, SegreError> {
    let blocks = Twist2x2::from_seed(twist.seed())?;
    if !blocks.is_diagonal_shape()
        || !is_diagonal_matrix(blocks.c())
        || !is_diagonal_matrix(blocks.q())
    {
        return Err(SegreError::RescalingRequiresDiagonal);
    }
    let c11 = blocks.c().get(0, 0).clone();
    let c22 = blocks.c().get(1, 1).clone();
    let q11 = blocks.q().get(0, 0).clone();
    let q22 = blocks.q().get(1, 1).clone();

    let twisted = segre_presentation(twist)?;
    let plain_twist = TwistData::new(
        TwistingSeed::flip(2, 2),
        twist.pres_a().clone(),
        twist.pres_b().clone(),
    )?;
    let plain = segre_presentation(&plain_twist)?;

    // Coefficient of a word (k, l) picks up the inverse rescaling of its
    // second letter.
    let second_letter_scale = [q11, q22, c11, c22];
    let mut rescaled = Vec::new();
    for row in twisted
        .presentation()
        .relation_subspace()
        .basis()
        .row_vectors()
    {
        let mut v = vec![Scalar::zero(); 16];
        for (idx, coeff) in row.iter().enumerate() {
            if !coeff.is_zero() {
                v[idx] = coeff * &second_letter_scale[idx % 4];
            }
        }
        rescaled.push(v);
    }
    let rescaled_span = Subspace::from_vectors(16, &rescaled)?;
    Ok(rescaled_span.equal(plain.presentation().relation_subspace())?)
}
