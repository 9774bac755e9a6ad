//! Canonical subspaces of a fixed coordinate space.
//!
//! A subspace is stored as a reduced row-echelon basis with zero rows
//! dropped, so two subspaces are equal as sets exactly when their stored
//! bases are equal entrywise. All binary operations check that both sides
//! live in the same ambient space and report a mismatch instead of
//! panicking, since subspaces routinely come from user-supplied data.

use super::{LinAlgError, Matrix, Scalar};

/// A linear subspace of `k^ambient_dim` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    /// RREF basis, one vector per row, no zero rows.
    basis: Matrix,
}

impl Subspace {
    /// Canonicalizes the row space of `spanning` inside `k^ambient_dim`.
    ///
    /// Panics if `spanning` has a different number of columns than
    /// `ambient_dim`; spanning sets are produced internally, not parsed.
    pub fn from_spanning(ambient_dim: usize, spanning: &Matrix) -> Self {
        assert!(
            spanning.cols() == ambient_dim || spanning.rows() == 0,
            "spanning vectors have length {} in ambient dimension {}",
            spanning.cols(),
            ambient_dim
        );
        let (reduced, rank) = spanning.rref();
        let rows: Vec<Vec<Scalar>> = (0..rank).map(|i| reduced.row(i).to_vec()).collect();
        let basis = if rows.is_empty() {
            Matrix::zeros(0, ambient_dim)
        } else {
            Matrix::from_rows(rows).expect("rref rows are uniform")
        };
        Subspace { ambient_dim, basis }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinAlgError> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinAlgError::VectorLength {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        let spanning = Matrix::from_rows(vectors.to_vec())?;
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        Ok(Subspace::from_spanning(ambient_dim, &spanning))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        let stacked = self.basis.vstack(&other.basis);
        Ok(Subspace::from_spanning(self.ambient_dim, &stacked))
    }

    /// Intersection via the Zassenhaus block construction: reduce
    /// `[U | U; W | 0]` and read intersection vectors from rows whose left
    /// half vanished.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(n));
        }
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zeros(other.dim(), n));
        let (reduced, rank) = top.vstack(&bottom).rref();
        let mut vectors = Vec::new();
        for i in 0..rank {
            let left_zero = (0..n).all(|j| reduced.get(i, j).is_zero());
            if left_zero {
                vectors.push((0..n).map(|j| reduced.get(i, n + j).clone()).collect());
            }
        }
        Subspace::from_vectors(n, &vectors)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinAlgError> {
        Ok(self.residual(v)?.iter().all(Scalar::is_zero))
    }

    /// Reduces `v` modulo the subspace; the zero vector means membership,
    /// and anything else is a concrete witness of non-membership.
    pub fn residual(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::VectorLength {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let mut r = v.to_vec();
        for i in 0..self.basis.rows() {
            let lead = (0..self.ambient_dim)
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("canonical basis has no zero rows");
            if r[lead].is_zero() {
                continue;
            }
            let factor = r[lead].clone();
            for j in 0..self.ambient_dim {
                let delta = &factor * self.basis.get(i, j);
                r[j] -= delta;
            }
        }
        Ok(r)
    }

    pub fn is_contained_in(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_ambient(other)?;
        for i in 0..self.basis.rows() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// The space of linear functionals vanishing on this subspace, written
    /// in the dual coordinates of the same indexing.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        self.basis.kernel()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, basis {:?})",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn span(ambient: usize, rows: Vec<Vec<i64>>) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(s).collect())
            .collect();
        Subspace::from_vectors(ambient, &vectors).unwrap()
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let a = span(3, vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let b = span(3, vec![vec![2, 2, 2], vec![0, 0, -1]]);
        assert!(a.equal(&b).unwrap());
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_and_intersection() {
        let xy = span(3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let yz = span(3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let total = xy.sum(&yz).unwrap();
        assert_eq!(total.dim(), 3);
        let meet = xy.intersect(&yz).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&[s(0), s(1), s(0)]).unwrap());
    }

    #[test]
    fn dimension_formula_on_random_looking_spans() {
        let u = span(4, vec![vec![1, 2, 3, 4], vec![0, 1, 0, 1]]);
        let w = span(4, vec![vec![1, 1, 1, 1], vec![2, 3, 3, 5]]);
        let sum_dim = u.sum(&w).unwrap().dim();
        let meet_dim = u.intersect(&w).unwrap().dim();
        assert_eq!(sum_dim + meet_dim, u.dim() + w.dim());
    }

    #[test]
    fn membership_and_residual() {
        let p = span(3, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(p.contains(&[s(1), s(1), s(2)]).unwrap());
        assert!(!p.contains(&[s(0), s(0), s(1)]).unwrap());
        let r = p.residual(&[s(1), s(1), s(3)]).unwrap();
        assert_eq!(r, vec![s(0), s(0), s(1)]);
    }

    #[test]
    fn annihilator_involution() {
        let p = span(4, vec![vec![1, 0, 2, 0], vec![0, 1, 0, 3]]);
        let ann = p.annihilator();
        assert_eq!(ann.dim(), 2);
        // Every functional kills every basis vector of the original space.
        for i in 0..ann.basis().rows() {
            let f = ann.basis().row(i);
            for k in 0..p.basis().rows() {
                let v = p.basis().row(k);
                let pairing: Scalar = f.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(pairing.is_zero());
            }
        }
        assert!(ann.annihilator().equal(&p).unwrap());
        assert!(Subspace::zero(3).annihilator().equal(&Subspace::full(3)).unwrap());
        assert!(Subspace::full(3).annihilator().equal(&Subspace::zero(3)).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = span(2, vec![vec![1, 0]]);
        let b = span(3, vec![vec![1, 0, 0]]);
        assert!(matches!(
            a.sum(&b),
            Err(LinAlgError::AmbientMismatch { left: 2, right: 3 })
        ));
        assert!(matches!(
            a.contains(&[s(1), s(0), s(0)]),
            Err(LinAlgError::VectorLength { expected: 2, got: 3 })
        ));
    }
}
