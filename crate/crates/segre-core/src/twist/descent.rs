//! Whether a seed respects the relations of both sides.

use super::{TwistError, TwistingSeed};
use crate::algebra::QuadraticPresentation;
use crate::linalg::{Scalar, Subspace};

/// A seed together with the two quadratic algebras it is meant to twist:
/// the A side on the V generators and the B side on the U generators.
#[derive(Debug, Clone)]
pub struct TwistData {
    seed: TwistingSeed,
    pres_a: QuadraticPresentation,
    pres_b: QuadraticPresentation,
}

impl TwistData {
    pub fn new(
        seed: TwistingSeed,
        pres_a: QuadraticPresentation,
        pres_b: QuadraticPresentation,
    ) -> Result<Self, TwistError> {
        if pres_a.generator_count() != seed.dim_v() {
            return Err(TwistError::SideDimensionMismatch {
                side: 'A',
                seed: seed.dim_v(),
                gens: pres_a.generator_count(),
            });
        }
        if pres_b.generator_count() != seed.dim_u() {
            return Err(TwistError::SideDimensionMismatch {
                side: 'B',
                seed: seed.dim_u(),
                gens: pres_b.generator_count(),
            });
        }
        Ok(TwistData {
            seed,
            pres_a,
            pres_b,
        })
    }

    pub fn seed(&self) -> &TwistingSeed {
        &self.seed
    }

    pub fn pres_a(&self) -> &QuadraticPresentation {
        &self.pres_a
    }

    pub fn pres_b(&self) -> &QuadraticPresentation {
        &self.pres_b
    }

    /// True when every off-diagonal generator-action component vanishes.
    pub fn is_diagonal(&self) -> bool {
        super::sigma_of(self).is_diagonal()
    }
}

/// Result of the two relation-descent inclusions. Both holding certifies
/// that the seed extends to a twisting map between the full algebras; a
/// failing side carries a witness vector (the residual of one image vector
/// outside the target space).
#[derive(Debug, Clone)]
pub struct DescentReport {
    /// The image of (B relations)⊗V lands in V⊗(B relations).
    pub b_side_holds: bool,
    /// The image of U⊗(A relations) lands in (A relations)⊗U.
    pub a_side_holds: bool,
    /// Degree horizon recorded with the certificate. The two degree-3
    /// inclusions above are sufficient for every degree; the horizon
    /// documents how far downstream consumers asked for coverage.
    pub checked_degree: usize,
    pub b_witness: Option<Vec<Scalar>>,
    pub a_witness: Option<Vec<Scalar>>,
}

impl DescentReport {
    pub fn pass(&self) -> bool {
        self.b_side_holds && self.a_side_holds
    }
}

/// Checks that the seed's extensions carry R_B⊗V into V⊗R_B and U⊗R_A
/// into R_A⊗U.
pub fn validate_descent(twist: &TwistData, checked_degree: usize) -> Result<DescentReport, TwistError> {
    let seed = &twist.seed;
    let n = seed.dim_v();
    let m = seed.dim_u();

    // B side: R_B ⊗ V sits inside U⊗U⊗V with the V index innermost.
    let rb = twist.pres_b.relation_subspace().basis();
    let ext_b = seed.extension(1, 2);
    let mut b_target_vectors = Vec::new();
    let mut b_image_vectors = Vec::new();
    for r in 0..rb.rows() {
        for j in 0..n {
            let mut v = vec![Scalar::zero(); m * m * n];
            for uu in 0..(m * m) {
                let c = rb.get(r, uu);
                if !c.is_zero() {
                    v[uu * n + j] = c.clone();
                }
            }
            b_image_vectors.push(ext_b.apply(&v));
            let mut t = vec![Scalar::zero(); n * m * m];
            for uu in 0..(m * m) {
                let c = rb.get(r, uu);
                if !c.is_zero() {
                    t[j * m * m + uu] = c.clone();
                }
            }
            b_target_vectors.push(t);
        }
    }
    let b_target = Subspace::from_vectors(n * m * m, &b_target_vectors)?;
    let (b_side_holds, b_witness) = inclusion_witness(&b_image_vectors, &b_target)?;

    // A side: U ⊗ R_A sits inside U⊗V⊗V with the U index outermost.
    let ra = twist.pres_a.relation_subspace().basis();
    let ext_a = seed.extension(2, 1);
    let mut a_target_vectors = Vec::new();
    let mut a_image_vectors = Vec::new();
    for r in 0..ra.rows() {
        for k in 0..m {
            let mut v = vec![Scalar::zero(); m * n * n];
            for vv in 0..(n * n) {
                let c = ra.get(r, vv);
                if !c.is_zero() {
                    v[k * n * n + vv] = c.clone();
                }
            }
            a_image_vectors.push(ext_a.apply(&v));
            let mut t = vec![Scalar::zero(); n * n * m];
            for vv in 0..(n * n) {
                let c = ra.get(r, vv);
                if !c.is_zero() {
                    t[vv * m + k] = c.clone();
                }
            }
            a_target_vectors.push(t);
        }
    }
    let a_target = Subspace::from_vectors(n * n * m, &a_target_vectors)?;
    let (a_side_holds, a_witness) = inclusion_witness(&a_image_vectors, &a_target)?;

    Ok(DescentReport {
        b_side_holds,
        a_side_holds,
        checked_degree,
        b_witness,
        a_witness,
    })
}

fn inclusion_witness(
    images: &[Vec<Scalar>],
    target: &Subspace,
) -> Result<(bool, Option<Vec<Scalar>>), TwistError> {
    for image in images {
        let residual = target.residual(image)?;
        if residual.iter().any(|c| !c.is_zero()) {
            return Ok((false, Some(residual)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorSet;
    use crate::linalg::Matrix;
    use crate::twist::Twist2x2;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
        Matrix::from_rows(vec![vec![s(a), s(b)], vec![s(c), s(d)]]).unwrap()
    }

    fn poly(labels: [&str; 2]) -> QuadraticPresentation {
        QuadraticPresentation::polynomial(GeneratorSet::from_labels(&labels))
    }

    fn poly_twist(t: &Twist2x2) -> TwistData {
        TwistData::new(t.to_seed().unwrap(), poly(["x", "y"]), poly(["u", "v"])).unwrap()
    }

    #[test]
    fn flip_descends_for_commutative_sides() {
        let report = validate_descent(&poly_twist(&Twist2x2::flip()), 6).unwrap();
        assert!(report.pass());
        assert!(report.b_witness.is_none());
        assert_eq!(report.checked_degree, 6);
    }

    #[test]
    fn commuting_unipotent_pair_descends() {
        let t = Twist2x2::diagonal(m2(1, 0, 1, 1), m2(1, 0, 1, 1));
        assert!(validate_descent(&poly_twist(&t), 6).unwrap().pass());
    }

    #[test]
    fn non_commuting_diagonal_pair_fails_with_witness() {
        let t = Twist2x2::diagonal(m2(1, 0, 1, 1), m2(1, 0, 0, 2));
        let report = validate_descent(&poly_twist(&t), 6).unwrap();
        assert!(!report.pass());
        assert!(report.a_witness.is_some() || report.b_witness.is_some());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let seed = TwistingSeed::flip(2, 2);
        let three = QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["a", "b", "c"]));
        assert!(matches!(
            TwistData::new(seed, three, poly(["u", "v"])),
            Err(TwistError::SideDimensionMismatch { side: 'A', .. })
        ));
    }

    #[test]
    fn matrix_criteria_agree_with_descent_on_samples() {
        let cases = vec![
            Twist2x2::flip(),
            Twist2x2::diagonal(m2(1, 0, 1, 1), m2(1, 0, 1, 1)),
            Twist2x2::diagonal(m2(2, 0, 0, 3), m2(1, 0, 0, 5)),
            Twist2x2::diagonal(m2(1, 0, 1, 1), m2(1, 0, 0, 2)),
            Twist2x2::new(m2(1, 0, 0, 1), m2(0, 0, 1, 0), m2(0, 1, 0, 0), m2(1, 0, 0, 1)),
        ];
        for t in cases {
            let Ok(report) = t.validate() else { continue };
            let descent = validate_descent(&poly_twist(&t), 3).unwrap();
            assert_eq!(
                report.pass(),
                descent.pass(),
                "criteria and descent disagree for {t:?}"
            );
        }
    }
}
