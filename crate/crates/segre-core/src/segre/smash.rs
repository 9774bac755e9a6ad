//! A finite window of the bigraded smash-product algebra attached to a
//! twist, and the density check for its off-diagonal rows.

use crate::algebra::{AlgebraError, DegreeCache, Word};
use crate::linalg::{Scalar, Subspace};
use crate::twist::{validate_descent, TwistData};

use super::model::pair_multiply;
use super::SegreError;

/// A truncation of the bigraded algebra with components
/// S_(z, b) = A_{z+b} ⊗ B_b, kept for |z| ≤ max_z and 0 ≤ b ≤ max_b.
///
/// The b = z row structure specializes: the (0, b) components are exactly
/// the twisted Segre product. Components with z + b < 0 are zero.
/// Coordinates pair side normal words with the A word outermost, as in
/// [`super::SegreComponentModel`].
#[derive(Debug)]
pub struct SmashTruncation {
    twist: TwistData,
    max_z: usize,
    max_b: usize,
    cache_a: DegreeCache,
    cache_b: DegreeCache,
}

impl SmashTruncation {
    pub fn build(twist: &TwistData, max_z: usize, max_b: usize) -> Result<Self, SegreError> {
        let report = validate_descent(twist, 3)?;
        if !report.pass() {
            return Err(SegreError::InvalidTwist {
                b_side_holds: report.b_side_holds,
                a_side_holds: report.a_side_holds,
            });
        }
        Ok(SmashTruncation {
            twist: twist.clone(),
            max_z,
            max_b,
            cache_a: DegreeCache::build(twist.pres_a(), max_z + max_b)?,
            cache_b: DegreeCache::build(twist.pres_b(), max_b)?,
        })
    }

    pub fn twist(&self) -> &TwistData {
        &self.twist
    }

    pub fn max_z(&self) -> usize {
        self.max_z
    }

    pub fn max_b(&self) -> usize {
        self.max_b
    }

    fn check_window(&self, z: i64, b: usize) -> Result<(), SegreError> {
        if z.unsigned_abs() as usize > self.max_z || b > self.max_b {
            return Err(SegreError::ComponentOutOfWindow {
                z_degree: z,
                b_degree: b,
                max_z: self.max_z,
                max_b: self.max_b,
            });
        }
        Ok(())
    }

    /// The A-side degree of the (z, b) component, or None when the
    /// component is zero.
    fn a_degree(z: i64, b: usize) -> Option<usize> {
        let a = z + b as i64;
        (a >= 0).then_some(a as usize)
    }

    pub fn dim(&self, z: i64, b: usize) -> Result<usize, SegreError> {
        self.check_window(z, b)?;
        match Self::a_degree(z, b) {
            None => Ok(0),
            Some(a) => Ok(self.cache_a.dim(a)? * self.cache_b.dim(b)?),
        }
    }

    /// The basis of the (z, b) component: pairs of side normal words.
    pub fn basis_pairs(&self, z: i64, b: usize) -> Result<Vec<(Word, Word)>, SegreError> {
        self.check_window(z, b)?;
        let Some(a) = Self::a_degree(z, b) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for wa in self.cache_a.normal_words(a)? {
            for wb in self.cache_b.normal_words(b)? {
                out.push((wa.clone(), wb.clone()));
            }
        }
        Ok(out)
    }

    /// Multiplies an element of S_(z1, b1) by one of S_(z2, b2); the result
    /// lives in S_(z1+z2, b1+b2), which must still be inside the window.
    pub fn multiply(
        &self,
        (z1, b1): (i64, usize),
        x: &[Scalar],
        (z2, b2): (i64, usize),
        y: &[Scalar],
    ) -> Result<Vec<Scalar>, SegreError> {
        self.check_window(z1, b1)?;
        self.check_window(z2, b2)?;
        self.check_window(z1 + z2, b1 + b2)?;
        let dim_x = self.dim(z1, b1)?;
        let dim_y = self.dim(z2, b2)?;
        if x.len() != dim_x {
            return Err(SegreError::Algebra(AlgebraError::DegreeMismatch {
                expected: dim_x,
                got: x.len(),
            }));
        }
        if y.len() != dim_y {
            return Err(SegreError::Algebra(AlgebraError::DegreeMismatch {
                expected: dim_y,
                got: y.len(),
            }));
        }
        let target_dim = self.dim(z1 + z2, b1 + b2)?;
        let (Some(a1), Some(a2)) = (Self::a_degree(z1, b1), Self::a_degree(z2, b2)) else {
            return Ok(vec![Scalar::zero(); target_dim]);
        };
        pair_multiply(
            &self.cache_a,
            &self.cache_b,
            self.twist.seed(),
            (a1, b1),
            x,
            (a2, b2),
            y,
        )
    }
}

/// One target component row of a [`DensityReport`].
#[derive(Debug, Clone)]
pub struct DensityRow {
    pub b_degree: usize,
    pub target_dim: usize,
    pub spanned_dim: usize,
    pub covered: bool,
}

/// Whether the product of the ℤ-degree rows z_left and z_right spans the
/// row z_left + z_right, component by component, inside a window.
///
/// When z_right is negative the components with b_degree < -z_right cannot
/// be reached at all; those rows sit below `covered_from` and do not count
/// against [`DensityReport::pass`].
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub z_left: i64,
    pub z_right: i64,
    pub covered_from: usize,
    pub rows: Vec<DensityRow>,
}

impl DensityReport {
    /// All reachable components are fully spanned.
    pub fn pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.b_degree < self.covered_from || r.covered)
    }

    /// The b-degrees of components that are reachable but not spanned.
    pub fn defects(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.b_degree >= self.covered_from && !r.covered)
            .map(|r| r.b_degree)
            .collect()
    }
}

/// Checks how much of the row z_left + z_right is spanned by products from
/// the rows z_left and z_right of the truncation.
///
/// z_left must be positive and z_right nonzero; all three rows must fit in
/// the window, and for negative z_right the first reachable component
/// (b_degree = -z_right) must exist below max_b.
pub fn density_window_check(
    trunc: &SmashTruncation,
    z_left: i64,
    z_right: i64,
) -> Result<DensityReport, SegreError> {
    if z_left <= 0 || z_right == 0 {
        return Err(SegreError::BadDensityArguments {
            i: z_left,
            s: z_right,
        });
    }
    let max_z = trunc.max_z() as i64;
    let max_b = trunc.max_b();
    for z in [z_left, z_right, z_left + z_right] {
        if z.abs() > max_z {
            return Err(SegreError::ComponentOutOfWindow {
                z_degree: z,
                b_degree: 0,
                max_z: trunc.max_z(),
                max_b,
            });
        }
    }
    let covered_from = (-z_right).max(0) as usize;
    if covered_from > max_b {
        return Err(SegreError::ComponentOutOfWindow {
            z_degree: z_left + z_right,
            b_degree: covered_from,
            max_z: trunc.max_z(),
            max_b,
        });
    }

    let z_target = z_left + z_right;
    let t_min = (-(z_target)).max(0) as usize;
    let mut rows = Vec::new();
    for t in t_min..=max_b {
        let target_dim = trunc.dim(z_target, t)?;
        let mut products = Vec::new();
        for b1 in 0..=t.min(max_b) {
            let b2 = t - b1;
            if b2 > max_b {
                continue;
            }
            let d1 = trunc.dim(z_left, b1)?;
            let d2 = trunc.dim(z_right, b2)?;
            if d1 == 0 || d2 == 0 {
                continue;
            }
            for e in 0..d1 {
                let mut x = vec![Scalar::zero(); d1];
                x[e] = Scalar::one();
                for f in 0..d2 {
                    let mut y = vec![Scalar::zero(); d2];
                    y[f] = Scalar::one();
                    products.push(trunc.multiply((z_left, b1), &x, (z_right, b2), &y)?);
                }
            }
        }
        let span = Subspace::from_vectors(target_dim, &products)?;
        rows.push(DensityRow {
            b_degree: t,
            target_dim,
            spanned_dim: span.dim(),
            covered: span.dim() == target_dim,
        });
    }

    Ok(DensityReport {
        z_left,
        z_right,
        covered_from,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorSet, QuadraticPresentation};
    use crate::linalg::Matrix;
    use crate::segre::SegreComponentModel;
    use crate::twist::{Twist2x2, TwistingSeed};

    fn poly2(a: &str, b: &str) -> QuadraticPresentation {
        QuadraticPresentation::polynomial(GeneratorSet::from_labels(&[a, b]))
    }

    fn lower(a: i64, c: i64, d: i64) -> Matrix {
        Matrix::from_rows(vec![
            vec![Scalar::from_int(a), Scalar::zero()],
            vec![Scalar::from_int(c), Scalar::from_int(d)],
        ])
        .unwrap()
    }

    fn unipotent_twist() -> TwistData {
        let seed = Twist2x2::diagonal(lower(1, 1, 1), lower(1, 1, 1))
            .to_seed()
            .unwrap();
        TwistData::new(seed, poly2("u", "v"), poly2("x", "y")).unwrap()
    }

    fn flip_twist() -> TwistData {
        TwistData::new(
            TwistingSeed::flip(2, 2),
            poly2("u", "v"),
            poly2("x", "y"),
        )
        .unwrap()
    }

    #[test]
    fn component_dimensions_follow_the_bigrading() {
        let trunc = SmashTruncation::build(&unipotent_twist(), 1, 2).unwrap();
        assert_eq!(trunc.dim(0, 2).unwrap(), 9);
        assert_eq!(trunc.dim(1, 1).unwrap(), 6);
        assert_eq!(trunc.dim(-1, 0).unwrap(), 0);
        assert_eq!(trunc.dim(-1, 2).unwrap(), 6);
        assert!(matches!(
            trunc.dim(2, 0),
            Err(SegreError::ComponentOutOfWindow { z_degree: 2, .. })
        ));
    }

    #[test]
    fn diagonal_row_multiplication_matches_the_component_model() {
        let twist = unipotent_twist();
        let trunc = SmashTruncation::build(&twist, 1, 3).unwrap();
        let model = SegreComponentModel::build(&twist, 4).unwrap();
        for k in 0..4usize {
            for l in 0..4usize {
                let x = model.generator(k % 2, k / 2).unwrap();
                let y = model.generator(l % 2, l / 2).unwrap();
                assert_eq!(
                    trunc.multiply((0, 1), &x, (0, 1), &y).unwrap(),
                    model.multiply(1, &x, 1, &y).unwrap()
                );
            }
        }
    }

    #[test]
    fn products_out_of_window_are_rejected() {
        let trunc = SmashTruncation::build(&flip_twist(), 1, 1).unwrap();
        let x = vec![Scalar::one(), Scalar::zero()];
        let err = trunc.multiply((1, 0), &x, (1, 0), &x).unwrap_err();
        assert!(matches!(
            err,
            SegreError::ComponentOutOfWindow { z_degree: 2, .. }
        ));
    }

    #[test]
    fn flip_density_defect_sits_exactly_at_the_unreachable_component() {
        let trunc = SmashTruncation::build(&flip_twist(), 2, 3).unwrap();
        let report = density_window_check(&trunc, 1, -1).unwrap();
        assert_eq!(report.covered_from, 1);
        assert!(report.pass());
        assert!(report.defects().is_empty());
        let uncovered: Vec<usize> = report
            .rows
            .iter()
            .filter(|r| !r.covered)
            .map(|r| r.b_degree)
            .collect();
        assert_eq!(uncovered, vec![0]);
    }

    #[test]
    fn unipotent_positive_rows_multiply_onto_their_sum() {
        let trunc = SmashTruncation::build(&unipotent_twist(), 2, 2).unwrap();
        let report = density_window_check(&trunc, 1, 1).unwrap();
        assert_eq!(report.covered_from, 0);
        assert!(report.pass());
        for row in &report.rows {
            assert_eq!(row.spanned_dim, row.target_dim);
        }
    }

    #[test]
    fn density_arguments_are_validated() {
        let trunc = SmashTruncation::build(&flip_twist(), 1, 2).unwrap();
        assert!(matches!(
            density_window_check(&trunc, 0, -1),
            Err(SegreError::BadDensityArguments { .. })
        ));
        assert!(matches!(
            density_window_check(&trunc, 1, 0),
            Err(SegreError::BadDensityArguments { .. })
        ));
        let small = SmashTruncation::build(&flip_twist(), 3, 2).unwrap();
        assert!(matches!(
            density_window_check(&small, 3, -3),
            Err(SegreError::ComponentOutOfWindow { .. })
        ));
    }
}
