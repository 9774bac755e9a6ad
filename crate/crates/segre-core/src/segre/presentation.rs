//! Quadratic presentations of twisted Segre products.

use crate::algebra::{FreeElement, GeneratorSet, QuadraticPresentation};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::twist::{validate_descent, TwistData};

use super::SegreError;

/// A presentation of the twisted Segre product on pair generators, together
/// with bookkeeping about where its relations came from.
///
/// The generators are the degree-1 pairs v_i⊗u_j, one per pair of side
/// generators, ordered with the u index outermost. In the 2×2 case they are
/// labelled `X, Y, Z, W` in that order; otherwise `g_i_j`.
#[derive(Debug, Clone)]
pub struct SegrePresentation {
    underlying: QuadraticPresentation,
    twist: TwistData,
    a_part_dim: usize,
    b_part_dim: usize,
    overlap_dim: usize,
}

impl SegrePresentation {
    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.underlying
    }

    /// The twist the presentation was built from.
    pub fn twist(&self) -> &TwistData {
        &self.twist
    }

    /// Dimension of the transported copy of R_A ⊗ U ⊗ U.
    pub fn a_part_dim(&self) -> usize {
        self.a_part_dim
    }

    /// Dimension of the transported copy of V ⊗ V ⊗ R_B.
    pub fn b_part_dim(&self) -> usize {
        self.b_part_dim
    }

    /// Dimension of the intersection of the two transported parts, so the
    /// relation space has dimension `a_part_dim + b_part_dim - overlap_dim`.
    pub fn overlap_dim(&self) -> usize {
        self.overlap_dim
    }
}

/// Labels for the pair generators, u index outermost.
fn pair_labels(dim_v: usize, dim_u: usize) -> Vec<String> {
    if dim_v == 2 && dim_u == 2 {
        return ["X", "Y", "Z", "W"].iter().map(|s| s.to_string()).collect();
    }
    let mut labels = Vec::with_capacity(dim_v * dim_u);
    for j in 0..dim_u {
        for i in 0..dim_v {
            labels.push(format!("g_{i}_{j}"));
        }
    }
    labels
}

/// The change of coordinates from V⊗V⊗U⊗U (side-relation coordinates) to
/// degree-2 word coordinates on the pair generators: the inverse seed
/// interleaves the middle factors, then each adjacent V⊗U pair is renamed
/// to a generator.
fn transport_matrix(twist: &TwistData) -> Matrix {
    let n = twist.seed().dim_v();
    let m = twist.seed().dim_u();
    let mut rename = Matrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..m {
            rename.set(j * n + i, i * m + j, Scalar::one());
        }
    }
    let interleave = Matrix::identity(n)
        .kron(&twist.seed().inverse_matrix().kron(&Matrix::identity(m)));
    rename.kron(&rename).mul(&interleave)
}

/// Builds the quadratic presentation of the twisted Segre product of the
/// twist's two side algebras.
///
/// The relation space is the transport of R_A⊗U⊗U + V⊗V⊗R_B into word
/// coordinates; the seed must descend to the side quotients (checked here),
/// otherwise that space does not present a well-defined product.
pub fn segre_presentation(twist: &TwistData) -> Result<SegrePresentation, SegreError> {
    let report = validate_descent(twist, 3)?;
    if !report.pass() {
        return Err(SegreError::InvalidTwist {
            b_side_holds: report.b_side_holds,
            a_side_holds: report.a_side_holds,
        });
    }

    let n = twist.seed().dim_v();
    let m = twist.seed().dim_u();
    let transport = transport_matrix(twist);
    let word_dim = n * m * n * m;

    let mut a_images = Vec::new();
    for row in twist.pres_a().relation_subspace().basis().row_vectors() {
        for uu in 0..m * m {
            let mut v = vec![Scalar::zero(); word_dim];
            for (vv, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    v[vv * m * m + uu] = c.clone();
                }
            }
            a_images.push(transport.apply(&v));
        }
    }
    let mut b_images = Vec::new();
    for row in twist.pres_b().relation_subspace().basis().row_vectors() {
        for vv in 0..n * n {
            let mut v = vec![Scalar::zero(); word_dim];
            for (uu, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    v[vv * m * m + uu] = c.clone();
                }
            }
            b_images.push(transport.apply(&v));
        }
    }

    let a_part = Subspace::from_vectors(word_dim, &a_images)?;
    let b_part = Subspace::from_vectors(word_dim, &b_images)?;
    let total = a_part.sum(&b_part)?;
    let overlap_dim = a_part.dim() + b_part.dim() - total.dim();

    let gens = GeneratorSet::new(pair_labels(n, m))?;
    let relations: Vec<FreeElement> = total
        .basis()
        .row_vectors()
        .into_iter()
        .map(|row| FreeElement::from_vector(2, n * m, &row))
        .collect();
    let underlying = QuadraticPresentation::new(gens, &relations)?;

    Ok(SegrePresentation {
        underlying,
        twist: twist.clone(),
        a_part_dim: a_part.dim(),
        b_part_dim: b_part.dim(),
        overlap_dim,
    })
}
