//! The 2×2-by-2×2 block form of a seed and its matrix validity criteria.

use super::{TwistError, TwistingSeed};
use crate::linalg::{Matrix, Scalar};

/// A seed between two rank-2 generator spaces, stored as four 2×2 blocks.
///
/// With A-generators x,y and B-generators u,v the blocks describe where
/// each mixed pair goes: block (k,l) holds, at entry (j,i), the coefficient
/// of (i-th A-generator)⊗(l-th B-generator) in the image of
/// (k-th B-generator)⊗(j-th A-generator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist2x2 {
    c: Matrix,
    d: Matrix,
    p: Matrix,
    q: Matrix,
}

/// Outcome of the exact matrix criteria for a 2×2 seed over commutative
/// polynomial sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistConditionReport {
    /// CP = PC, DQ = QD and DP + CQ = PD + QC for the stored blocks.
    pub block_conditions: bool,
    /// The same three identities for the resliced block family.
    pub resliced_conditions: bool,
}

impl TwistConditionReport {
    pub fn pass(&self) -> bool {
        self.block_conditions && self.resliced_conditions
    }
}

fn check_2x2(m: &Matrix, name: &str) {
    assert!(
        m.rows() == 2 && m.cols() == 2,
        "{name} block must be 2x2, got {}x{}",
        m.rows(),
        m.cols()
    );
}

impl Twist2x2 {
    pub fn new(c: Matrix, d: Matrix, p: Matrix, q: Matrix) -> Self {
        check_2x2(&c, "C");
        check_2x2(&d, "D");
        check_2x2(&p, "P");
        check_2x2(&q, "Q");
        Twist2x2 { c, d, p, q }
    }

    /// The diagonal shape D = P = 0.
    pub fn diagonal(c: Matrix, q: Matrix) -> Self {
        Twist2x2::new(c, Matrix::zeros(2, 2), Matrix::zeros(2, 2), q)
    }

    /// The plain transposition as a block twist.
    pub fn flip() -> Self {
        Twist2x2::diagonal(Matrix::identity(2), Matrix::identity(2))
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn is_diagonal_shape(&self) -> bool {
        self.d.is_zero() && self.p.is_zero()
    }

    fn block(&self, k: usize, l: usize) -> &Matrix {
        match (k, l) {
            (0, 0) => &self.c,
            (0, 1) => &self.d,
            (1, 0) => &self.p,
            (1, 1) => &self.q,
            _ => unreachable!("block index out of range"),
        }
    }

    /// Assembles the 4×4 seed matrix in the crate's tensor coordinates.
    pub fn to_seed(&self) -> Result<TwistingSeed, TwistError> {
        let mut m = Matrix::zeros(4, 4);
        for k in 0..2 {
            for l in 0..2 {
                for j in 0..2 {
                    for i in 0..2 {
                        m.set(i * 2 + l, k * 2 + j, self.block(k, l).get(j, i).clone());
                    }
                }
            }
        }
        TwistingSeed::new(2, 2, m)
    }

    /// Reads the block form back out of a 2×2-by-2×2 seed.
    pub fn from_seed(seed: &TwistingSeed) -> Result<Self, TwistError> {
        if seed.dim_v() != 2 || seed.dim_u() != 2 {
            return Err(TwistError::NotTwoByTwo {
                dim_v: seed.dim_v(),
                dim_u: seed.dim_u(),
            });
        }
        let entry = |k: usize, l: usize, j: usize, i: usize| {
            seed.matrix().get(i * 2 + l, k * 2 + j).clone()
        };
        let build = |k: usize, l: usize| {
            Matrix::from_fn(2, 2, |j, i| entry(k, l, j, i))
        };
        Ok(Twist2x2 {
            c: build(0, 0),
            d: build(0, 1),
            p: build(1, 0),
            q: build(1, 1),
        })
    }

    /// The resliced family: the roles of the block index and the entry
    /// index are swapped, so entry (r,s) of resliced block (k,l) is entry
    /// (k,l) of block (r,s). Reslicing is an involution.
    pub fn resliced(&self) -> Twist2x2 {
        let build = |k: usize, l: usize| {
            Matrix::from_fn(2, 2, |r, s| self.block(r, s).get(k, l).clone())
        };
        Twist2x2 {
            c: build(0, 0),
            d: build(0, 1),
            p: build(1, 0),
            q: build(1, 1),
        }
    }

    /// Checks the exact commutation criteria that characterize, over
    /// two-variable commutative polynomial sides, which 2×2 seeds extend to
    /// a twisting map. Errors if the assembled seed is singular.
    pub fn validate(&self) -> Result<TwistConditionReport, TwistError> {
        self.to_seed()?;
        Ok(TwistConditionReport {
            block_conditions: condition_triple(&self.c, &self.d, &self.p, &self.q),
            resliced_conditions: {
                let t = self.resliced();
                condition_triple(&t.c, &t.d, &t.p, &t.q)
            },
        })
    }
}

fn condition_triple(c: &Matrix, d: &Matrix, p: &Matrix, q: &Matrix) -> bool {
    c.mul(p) == p.mul(c)
        && d.mul(q) == q.mul(d)
        && d.mul(p).add(&c.mul(q)) == p.mul(d).add(&q.mul(c))
}

fn is_scalar(m: &Matrix) -> bool {
    m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1)
}

/// Simultaneously lower-triangularizes a commuting pair of 2×2 matrices
/// over the rationals: returns (X, C', Q') with X⁻¹CX = C' and X⁻¹QX = Q'
/// both lower triangular.
///
/// Errors when the matrices do not commute, or when the eigenvalues needed
/// for the change of basis are irrational (the obstruction is surfaced
/// rather than approximated).
pub fn normalize_diagonal(
    c: &Matrix,
    q: &Matrix,
) -> Result<(Matrix, Matrix, Matrix), TwistError> {
    check_2x2(c, "C");
    check_2x2(q, "Q");
    if c.mul(q) != q.mul(c) {
        return Err(TwistError::NonCommuting);
    }
    if c.is_lower_triangular() && q.is_lower_triangular() {
        return Ok((Matrix::identity(2), c.clone(), q.clone()));
    }
    // At least one matrix is not lower triangular, so the pivot matrix
    // chosen here is never scalar.
    let pivot = if !is_scalar(c) { c } else { q };
    let trace = pivot.get(0, 0) + pivot.get(1, 1);
    let det = pivot.get(0, 0) * pivot.get(1, 1) - pivot.get(0, 1) * pivot.get(1, 0);
    let disc = &trace * &trace - Scalar::from_int(4) * det;
    let root = disc.rational_sqrt().ok_or_else(|| TwistError::IrrationalEigenvalues {
        discriminant: disc.to_string(),
    })?;
    let half = Scalar::ratio(1, 2);
    let x = if !root.is_zero() {
        // Distinct eigenvalues: columns are the two eigenvectors, larger
        // root first.
        let l1 = (&trace + &root) * &half;
        let l2 = (&trace - &root) * &half;
        let v1 = eigenvector(pivot, &l1);
        let v2 = eigenvector(pivot, &l2);
        Matrix::from_fn(2, 2, |r, col| if col == 0 { v1[r].clone() } else { v2[r].clone() })
    } else {
        // One repeated eigenvalue with a one-dimensional eigenline (the
        // pivot is not scalar): put the eigenvector second and complete
        // with a standard basis vector.
        let l = &trace * &half;
        let v = eigenvector(pivot, &l);
        let w = if !v[0].is_zero() {
            [Scalar::zero(), Scalar::one()]
        } else {
            [Scalar::one(), Scalar::zero()]
        };
        Matrix::from_fn(2, 2, |r, col| if col == 0 { w[r].clone() } else { v[r].clone() })
    };
    let x_inv = x.inverse().expect("eigenvector columns are independent");
    let c_out = x_inv.mul(&c.mul(&x));
    let q_out = x_inv.mul(&q.mul(&x));
    assert!(
        c_out.is_lower_triangular() && q_out.is_lower_triangular(),
        "conjugation by the eigenvector basis must triangularize a commuting pair"
    );
    Ok((x, c_out, q_out))
}

/// A nonzero kernel vector of M − λI, normalized with leading entry 1.
fn eigenvector(m: &Matrix, lambda: &Scalar) -> Vec<Scalar> {
    let shifted = m.sub(&Matrix::identity(2).scale(lambda));
    let kernel = shifted.kernel();
    assert!(kernel.dim() >= 1, "eigenvalue must have an eigenvector");
    kernel.basis().row(0).to_vec()
}
