//! Dense matrices over exact rational scalars.

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinAlgError, Scalar, Subspace};

/// A dense row-major matrix of [`Scalar`] entries.
///
/// Shape mismatches in arithmetic (`mul`, `add`, `apply`, ...) are programmer
/// errors and panic with a descriptive message; fallible construction from
/// external data goes through [`Matrix::from_rows`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of a reduced row-echelon computation.
#[derive(Debug, Clone)]
pub struct RrefOutcome {
    /// The reduced matrix; pivot entries are 1 and pivot columns are cleared.
    pub reduced: Matrix,
    /// Pivot columns in the order they were assigned to rows 0, 1, ...
    pub pivots: Vec<usize>,
}

/// Outcome of an exact linear solve `A x = b` (columnwise for matrices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Exactly one solution.
    Unique(Matrix),
    /// No solution at all; carries the index of an inconsistent right-hand
    /// side column.
    Inconsistent { column: usize },
    /// Solutions exist but are not unique (the coefficient matrix has a
    /// nontrivial kernel).
    Underdetermined,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(LinAlgError::RaggedRows {
                    row: i,
                    expected: n_cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            entries,
        })
    }

    /// Builds the matrix entrywise from a function of (row, column).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        assert!(i < self.rows, "row index out of range");
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        assert!(j < self.cols, "column index out of range");
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "matrix addition shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert!(
            self.cols == other.rows,
            "matrix product shape mismatch: {}x{} times {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone() + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert!(
            v.len() == self.cols,
            "matrix apply length mismatch: {} cols vs vector of {}",
            self.cols,
            v.len()
        );
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Applies the matrix to a row vector on the right: `v * self`.
    pub fn apply_to_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert!(
            v.len() == self.rows,
            "row apply length mismatch: {} rows vs vector of {}",
            self.rows,
            v.len()
        );
        (0..self.cols)
            .map(|j| {
                let mut acc = Scalar::zero();
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += x * self.get(i, j);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product with the first factor outermost: the entry at
    /// (`i1 * rows(b) + i2`, `j1 * cols(b) + j2`) is `a[i1,j1] * b[i2,j2]`.
    /// Matches the lexicographic word indexing used throughout the crate.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, a * b);
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert!(
            self.cols == other.cols,
            "vstack column mismatch: {} vs {}",
            self.cols,
            other.cols
        );
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert!(
            self.rows == other.rows,
            "hstack row mismatch: {} vs {}",
            self.rows,
            other.rows
        );
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row-echelon form with the natural left-to-right column order.
    /// Returns the reduced matrix and its rank; the row space is preserved.
    pub fn rref(&self) -> (Matrix, usize) {
        let order: Vec<usize> = (0..self.cols).collect();
        let outcome = self.rref_in_column_order(&order);
        let rank = outcome.pivots.len();
        (outcome.reduced, rank)
    }

    /// Reduced row-echelon form scanning candidate pivot columns in the given
    /// order. Pivot columns are fully cleared (above and below), pivot
    /// entries are normalized to 1, and finished rows are swapped to the top
    /// in processing order. The row space is preserved for any order.
    pub fn rref_in_column_order(&self, order: &[usize]) -> RrefOutcome {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for &col in order {
            assert!(col < m.cols, "pivot column out of range");
            let pivot_row = (next_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(pivot_row) = pivot_row else { continue };
            m.swap_rows(next_row, pivot_row);
            let inv = m.get(next_row, col).inverse().expect("pivot is nonzero");
            m.scale_row(next_row, &inv);
            for r in 0..m.rows {
                if r != next_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == m.rows {
                break;
            }
        }
        RrefOutcome { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Null space `{ v : self * v = 0 }` as a canonical subspace of the
    /// column coordinate space.
    pub fn kernel(&self) -> Subspace {
        let order: Vec<usize> = (0..self.cols).collect();
        let outcome = self.rref_in_column_order(&order);
        let reduced = outcome.reduced;
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in outcome.pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        let free_cols: Vec<usize> = (0..self.cols).filter(|&j| pivot_of_col[j].is_none()).collect();
        let mut basis_rows = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for j in 0..self.cols {
                if let Some(r) = pivot_of_col[j] {
                    v[j] = -reduced.get(r, f).clone();
                }
            }
            basis_rows.push(v);
        }
        let basis = Matrix::from_rows(basis_rows).expect("kernel rows are uniform");
        Subspace::from_spanning(self.cols, &basis)
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let augmented = self.hstack(&Matrix::identity(n));
        // Pivot only within the left block; full rank there means the left
        // half reduces to the identity and the right half is the inverse.
        let order: Vec<usize> = (0..n).collect();
        let outcome = augmented.rref_in_column_order(&order);
        if outcome.pivots.len() < n {
            return None;
        }
        let reduced = outcome.reduced;
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solves `self * X = rhs` exactly, reporting inconsistency and
    /// non-uniqueness instead of guessing.
    pub fn solve_exact(&self, rhs: &Matrix) -> SolveOutcome {
        assert!(
            self.rows == rhs.rows,
            "solve shape mismatch: {} rows vs rhs {} rows",
            self.rows,
            rhs.rows
        );
        let augmented = self.hstack(rhs);
        let outcome = augmented.rref_in_column_order(&(0..self.cols).collect::<Vec<_>>());
        let rank = outcome.pivots.len();
        let reduced = outcome.reduced;
        // Any nonzero residual beyond the eliminated rows witnesses an
        // inconsistent column.
        for r in rank..reduced.rows {
            for j in 0..rhs.cols {
                if !reduced.get(r, self.cols + j).is_zero() {
                    return SolveOutcome::Inconsistent { column: j };
                }
            }
        }
        if rank < self.cols {
            return SolveOutcome::Underdetermined;
        }
        let mut solution = Matrix::zeros(self.cols, rhs.cols);
        for (row, &col) in outcome.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                solution.set(col, j, reduced.get(row, self.cols + j).clone());
            }
        }
        SolveOutcome::Unique(solution)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.entries[idx].is_zero() {
                self.entries[idx] *= c;
            }
        }
    }

    /// Row operation `row[r] -= factor * row[src]`.
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let v = self.entries[src * self.cols + j].clone();
            if !v.is_zero() {
                let sub = v * factor;
                self.entries[r * self.cols + j] -= sub;
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}
