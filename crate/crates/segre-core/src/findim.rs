//! Finite-dimensional unital algebras presented by exact structure
//! constants.
//!
//! An algebra here is a basis `e_0, …, e_{d−1}`, a unit vector, and the
//! full product tensor `c[i][j]` giving the coordinates of `e_i·e_j`. The
//! constructor validates associativity and the unit laws on every basis
//! triple, so downstream analysis can assume an honest algebra. Analysis
//! stays over the rationals throughout: the radical comes from the trace
//! form of the left regular representation (valid in characteristic 0),
//! the center from a direct linear solve, and the Wedderburn block type
//! from splitting the minimal polynomial of a generic central element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{LinAlgError, Matrix, Scalar, Subspace};
use crate::poly;

/// How a structure-constant description can fail validation or analysis.
#[derive(Debug, Error)]
pub enum FinDimError {
    #[error("algebra must have at least one basis element")]
    Empty,
    #[error("structure constants are not a cubical {dim}-tensor")]
    RaggedConstants { dim: usize },
    #[error("unit vector has length {found}, expected {expected}")]
    UnitLength { expected: usize, found: usize },
    #[error("unit fails the identity law on basis element {basis}")]
    UnitNotIdentity { basis: usize },
    #[error("associativity fails on the basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("algebra is not semisimple: radical has dimension {radical_dim}")]
    NotSemisimple { radical_dim: usize },
    #[error("no generic central element found after {attempts} seeded attempts")]
    GenericElementNotFound { attempts: usize },
    #[error("assignment spans a subspace of dimension {rank}, expected {dim}")]
    AssignmentNotSpanning { rank: usize, dim: usize },
    #[error("assignment element has length {found}, expected {expected}")]
    AssignmentElementLength { expected: usize, found: usize },
    #[error(transparent)]
    Lin(#[from] LinAlgError),
}

/// Result of the block-type analysis over the rationals.
///
/// `Split` lists the matrix block sizes in ascending order, so the algebra
/// is isomorphic to a product of full matrix algebras over the scalars.
/// `NotSplitOverRationals` means some simple factor resists a rational
/// matrix interpretation, for example a number field or a division
/// algebra; the analysis reports this honestly instead of guessing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WedderburnOutcome {
    Split { blocks: Vec<usize> },
    NotSplitOverRationals,
}

/// A unital associative algebra of finite dimension over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDimAlgebra {
    dim: usize,
    unit: Vec<Scalar>,
    constants: Vec<Vec<Vec<Scalar>>>,
}

impl FinDimAlgebra {
    /// Validates and wraps a structure-constant description.
    ///
    /// `constants[i][j]` must hold the coordinates of `e_i·e_j`. The unit
    /// laws and associativity are checked exactly on all basis triples.
    pub fn new(
        unit: Vec<Scalar>,
        constants: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, FinDimError> {
        let dim = constants.len();
        if dim == 0 {
            return Err(FinDimError::Empty);
        }
        if constants
            .iter()
            .any(|p| p.len() != dim || p.iter().any(|v| v.len() != dim))
        {
            return Err(FinDimError::RaggedConstants { dim });
        }
        if unit.len() != dim {
            return Err(FinDimError::UnitLength {
                expected: dim,
                found: unit.len(),
            });
        }
        let alg = FinDimAlgebra {
            dim,
            unit,
            constants,
        };
        for b in 0..dim {
            let mut e = vec![Scalar::zero(); dim];
            e[b] = Scalar::one();
            if alg.multiply(&alg.unit, &e) != e || alg.multiply(&e, &alg.unit) != e {
                return Err(FinDimError::UnitNotIdentity { basis: b });
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = &alg.constants[i][j];
                for k in 0..dim {
                    let mut e = vec![Scalar::zero(); dim];
                    e[k] = Scalar::one();
                    let left = alg.multiply(ij, &e);
                    let right = alg.multiply_basis_left(i, &alg.constants[j][k]);
                    if left != right {
                        return Err(FinDimError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of the product `e_i·e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.constants[i][j]
    }

    /// Product of two coordinate vectors. Panics when a length differs
    /// from the algebra dimension.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), self.dim, "left factor has the wrong length");
        assert_eq!(b.len(), self.dim, "right factor has the wrong length");
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for (k, s) in self.constants[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &(s * &c);
                    }
                }
            }
        }
        out
    }

    fn multiply_basis_left(&self, i: usize, b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for j in 0..self.dim {
            if b[j].is_zero() {
                continue;
            }
            for (k, s) in self.constants[i][j].iter().enumerate() {
                if !s.is_zero() {
                    out[k] += &(s * &b[j]);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` on the basis.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| {
                let mut e = vec![Scalar::zero(); self.dim];
                e[j] = Scalar::one();
                self.multiply(a, &e)
            })
            .collect();
        Matrix::from_fn(self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Matrix of right multiplication by `a` on the basis.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| {
                let mut e = vec![Scalar::zero(); self.dim];
                e[j] = Scalar::one();
                self.multiply(&e, a)
            })
            .collect();
        Matrix::from_fn(self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Jacobson radical, computed as the null space of the trace form
    /// `(a, b) ↦ trace(L_{ab})` of the left regular representation. Over
    /// the rationals this criterion is exact, so the radical is zero if
    /// and only if the algebra is semisimple.
    pub fn radical(&self) -> Subspace {
        let traces: Vec<Scalar> = (0..self.dim)
            .map(|k| {
                let mut t = Scalar::zero();
                for p in 0..self.dim {
                    t += &self.constants[k][p][p];
                }
                t
            })
            .collect();
        let gram = Matrix::from_fn(self.dim, self.dim, |i, j| {
            let mut g = Scalar::zero();
            for (k, tr) in traces.iter().enumerate() {
                if !tr.is_zero() && !self.constants[i][j][k].is_zero() {
                    g += &(&self.constants[i][j][k] * tr);
                }
            }
            g
        });
        gram.kernel()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().dim() == 0
    }

    /// Center, as the common kernel of all commutator maps `a ↦ e_i·a −
    /// a·e_i`. The unit always lies in it.
    pub fn center(&self) -> Subspace {
        let mut stacked = Matrix::zeros(0, self.dim);
        for i in 0..self.dim {
            let mut e = vec![Scalar::zero(); self.dim];
            e[i] = Scalar::one();
            let comm = self.left_mult(&e).sub(&self.right_mult(&e));
            stacked = stacked.vstack(&comm);
        }
        stacked.kernel()
    }

    /// Wedderburn block type over the rationals.
    ///
    /// Requires a semisimple algebra. Primitive central idempotents are
    /// produced by factoring the minimal polynomial of a generic central
    /// element, drawn with small integer coordinates from a seeded
    /// deterministic generator; an unlucky draw (minimal polynomial of
    /// degree below the center dimension) is retried a bounded number of
    /// times. Each block is reported as a matrix block of size `s` when
    /// its dimension is `s²` and its center is one-dimensional.
    ///
    /// The perfect-square test is a necessary condition, not a proof of
    /// splitness: a rational division algebra of square dimension with
    /// trivial center would also pass it. Callers who need a certificate
    /// should verify an explicit isomorphism with [`verify_explicit_iso`].
    pub fn wedderburn_type(&self, seed: u64) -> Result<WedderburnOutcome, FinDimError> {
        let radical_dim = self.radical().dim();
        if radical_dim > 0 {
            return Err(FinDimError::NotSemisimple { radical_dim });
        }
        let center = self.center();
        let c = center.dim();
        let idempotents = if c == 1 {
            vec![self.unit.clone()]
        } else {
            match self.central_idempotents(&center, seed)? {
                Some(es) => es,
                None => return Ok(WedderburnOutcome::NotSplitOverRationals),
            }
        };
        let mut blocks = Vec::with_capacity(idempotents.len());
        for e in &idempotents {
            let block_dim = self.left_mult(e).rank();
            match integer_sqrt(block_dim) {
                Some(s) => blocks.push(s),
                None => return Ok(WedderburnOutcome::NotSplitOverRationals),
            }
        }
        blocks.sort_unstable();
        Ok(WedderburnOutcome::Split { blocks })
    }

    /// Primitive central idempotents via Lagrange interpolation at the
    /// rational roots of a generic central element's minimal polynomial.
    /// Returns `None` when the minimal polynomial has full degree but
    /// does not split over the rationals, which proves the center is not
    /// a product of copies of the scalar field.
    fn central_idempotents(
        &self,
        center: &Subspace,
        seed: u64,
    ) -> Result<Option<Vec<Vec<Scalar>>>, FinDimError> {
        const ATTEMPTS: usize = 8;
        let c = center.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ATTEMPTS {
            let mut z = vec![Scalar::zero(); self.dim];
            for m in 0..c {
                let r = Scalar::from_int(rng.gen_range(-9..=9));
                for (zi, bi) in z.iter_mut().zip(center.basis().row(m)) {
                    *zi += &(&r * bi);
                }
            }
            let minpoly = match self.minimal_polynomial(&z) {
                Some(p) => p,
                None => continue,
            };
            if poly::uni_degree(&minpoly) != Some(c) {
                continue;
            }
            let (roots, leftover) = poly::rational_roots(&minpoly);
            if poly::uni_degree(&leftover).map_or(false, |d| d > 0) || roots.len() != c
            {
                return Ok(None);
            }
            let es: Vec<Vec<Scalar>> = (0..c)
                .map(|j| {
                    let mut acc = self.unit.clone();
                    for (i, root) in roots.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        let shifted: Vec<Scalar> = z
                            .iter()
                            .zip(&self.unit)
                            .map(|(zi, ui)| zi - &(root * ui))
                            .collect();
                        let denom = &roots[j] - root;
                        acc = self
                            .multiply(&acc, &shifted)
                            .into_iter()
                            .map(|x| x / denom.clone())
                            .collect();
                    }
                    acc
                })
                .collect();
            for (j, e) in es.iter().enumerate() {
                debug_assert_eq!(self.multiply(e, e), *e, "idempotent law failed");
                for other in es.iter().skip(j + 1) {
                    debug_assert!(
                        self.multiply(e, other).iter().all(Scalar::is_zero),
                        "idempotents are not orthogonal"
                    );
                }
            }
            return Ok(Some(es));
        }
        Err(FinDimError::GenericElementNotFound { attempts: ATTEMPTS })
    }

    /// Monic minimal polynomial of `a`, ascending coefficients. `None`
    /// when the powers of `a` exceed the algebra dimension without a
    /// dependence, which validation rules out.
    fn minimal_polynomial(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut powers: Vec<Vec<Scalar>> = vec![self.unit.clone()];
        for m in 1..=self.dim {
            let next = self.multiply(powers.last().unwrap(), a);
            let span = Matrix::from_fn(self.dim, m, |r, c| powers[c][r].clone());
            let rhs = Matrix::from_fn(self.dim, 1, |r, _| next[r].clone());
            match span.solve_exact(&rhs) {
                crate::linalg::SolveOutcome::Unique(sol) => {
                    let mut coeffs: Vec<Scalar> =
                        sol.column(0).into_iter().map(|s| -s).collect();
                    coeffs.push(Scalar::one());
                    return Some(coeffs);
                }
                _ => powers.push(next),
            }
        }
        None
    }
}

/// A pair of 2×2 rational matrices, one per factor of the comparison
/// algebra used by [`verify_explicit_iso`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPair {
    pub first: Matrix,
    pub second: Matrix,
}

impl MatrixPair {
    /// Coordinates in the basis of `matrix_block_algebra(&[2, 2])`: the
    /// first factor row-major, then the second.
    fn flatten(&self) -> Vec<Scalar> {
        assert!(
            self.first.rows() == 2
                && self.first.cols() == 2
                && self.second.rows() == 2
                && self.second.cols() == 2,
            "matrix pair entries must be 2×2"
        );
        let mut v = Vec::with_capacity(8);
        for m in [&self.first, &self.second] {
            for i in 0..2 {
                for j in 0..2 {
                    v.push(m.get(i, j).clone());
                }
            }
        }
        v
    }
}

/// Product of full matrix algebras with the given block sizes, as a
/// structure-constant algebra. The basis lists the matrix units of each
/// block in row-major order, block by block.
pub fn matrix_block_algebra(sizes: &[usize]) -> FinDimAlgebra {
    let dim: usize = sizes.iter().map(|s| s * s).sum();
    assert!(dim > 0, "at least one nonempty block is required");
    // (block, row, col) for each basis index.
    let mut labels = Vec::with_capacity(dim);
    for (b, &s) in sizes.iter().enumerate() {
        for p in 0..s {
            for q in 0..s {
                labels.push((b, p, q));
            }
        }
    }
    let index = |b: usize, p: usize, q: usize| -> usize {
        let offset: usize = sizes[..b].iter().map(|s| s * s).sum();
        offset + p * sizes[b] + q
    };
    let mut constants = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    for (i, &(b1, p, q)) in labels.iter().enumerate() {
        for (j, &(b2, r, s)) in labels.iter().enumerate() {
            if b1 == b2 && q == r {
                constants[i][j][index(b1, p, s)] = Scalar::one();
            }
        }
    }
    let mut unit = vec![Scalar::zero(); dim];
    for (b, &s) in sizes.iter().enumerate() {
        for p in 0..s {
            unit[index(b, p, p)] = Scalar::one();
        }
    }
    FinDimAlgebra::new(unit, constants).expect("matrix units form an algebra")
}

/// Checks that sending each listed element to its matrix pair induces an
/// isomorphism onto `M₂ × M₂`.
///
/// The elements must span the algebra; the verdict is `true` exactly when
/// a linear map with those images exists, is bijective, preserves the
/// unit, and is multiplicative on every basis pair.
pub fn verify_explicit_iso(
    alg: &FinDimAlgebra,
    assignment: &[(Vec<Scalar>, MatrixPair)],
) -> Result<bool, FinDimError> {
    for (v, _) in assignment {
        if v.len() != alg.dim() {
            return Err(FinDimError::AssignmentElementLength {
                expected: alg.dim(),
                found: v.len(),
            });
        }
    }
    let span = Matrix::from_fn(alg.dim(), assignment.len(), |r, c| {
        assignment[c].0[r].clone()
    });
    let rank = span.rank();
    if rank != alg.dim() {
        return Err(FinDimError::AssignmentNotSpanning {
            rank,
            dim: alg.dim(),
        });
    }
    let target = matrix_block_algebra(&[2, 2]);
    if alg.dim() != target.dim() {
        return Ok(false);
    }
    // Solve spanᵀ·Φᵀ = imagesᵀ; an inconsistent system means no linear
    // map takes the listed elements to the listed images.
    let images = Matrix::from_fn(target.dim(), assignment.len(), |r, c| {
        assignment[c].1.flatten()[r].clone()
    });
    let phi = match span.transpose().solve_exact(&images.transpose()) {
        crate::linalg::SolveOutcome::Unique(x) => x.transpose(),
        crate::linalg::SolveOutcome::Inconsistent { .. } => return Ok(false),
        crate::linalg::SolveOutcome::Underdetermined => {
            unreachable!("spanning set cannot leave the map underdetermined")
        }
    };
    if phi.rank() != target.dim() {
        return Ok(false);
    }
    if phi.apply(alg.unit()) != target.unit() {
        return Ok(false);
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = phi.apply(alg.basis_product(i, j));
            let rhs = target.multiply(&phi.column(i), &phi.column(j));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact integer square root, or `None` when `n` is not a perfect square.
fn integer_sqrt(n: usize) -> Option<usize> {
    let mut s = 0usize;
    while s * s < n {
        s += 1;
    }
    (s * s == n).then_some(s)
}
