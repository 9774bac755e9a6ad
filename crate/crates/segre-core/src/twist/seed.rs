//! Twisting seeds and their extensions to tensor powers.

use super::TwistError;
use crate::linalg::{Matrix, Scalar};

/// An invertible linear map ψ₀: U⊗V → V⊗U in lexicographic tensor
/// coordinates.
///
/// Coordinate convention (fixed crate-wide): the domain U⊗V is indexed with
/// the U factor outermost (`k·dimV + j` for u_k⊗v_j) and the codomain V⊗U
/// with the V factor outermost (`i·dimU + l` for v_i⊗u_l).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistingSeed {
    dim_v: usize,
    dim_u: usize,
    matrix: Matrix,
    inverse: Matrix,
}

impl TwistingSeed {
    pub fn new(dim_v: usize, dim_u: usize, matrix: Matrix) -> Result<Self, TwistError> {
        let expected = dim_v * dim_u;
        if matrix.rows() != expected || matrix.cols() != expected {
            return Err(TwistError::SeedShape {
                expected,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let inverse = matrix.inverse().ok_or(TwistError::SeedNotInvertible)?;
        Ok(TwistingSeed {
            dim_v,
            dim_u,
            matrix,
            inverse,
        })
    }

    /// The plain transposition u⊗v ↦ v⊗u.
    pub fn flip(dim_v: usize, dim_u: usize) -> Self {
        let mut m = Matrix::zeros(dim_v * dim_u, dim_v * dim_u);
        for k in 0..dim_u {
            for j in 0..dim_v {
                m.set(j * dim_u + k, k * dim_v + j, Scalar::one());
            }
        }
        TwistingSeed::new(dim_v, dim_u, m).expect("transposition is invertible")
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    /// The extension to U^⊗q ⊗ V^⊗p → V^⊗p ⊗ U^⊗q as a composition of
    /// single-seed layers, applied without materializing the full matrix.
    pub fn extension(&self, p: usize, q: usize) -> ExtensionOp {
        ExtensionOp {
            dim_v: self.dim_v,
            dim_u: self.dim_u,
            p,
            q,
            layers: primary_layers(p, q, self.dim_v, self.dim_u),
            seed: self.matrix.clone(),
        }
    }

    /// Dense matrix of [`TwistingSeed::extension`]; the (p,q)=(1,1) case is
    /// the seed itself and p=0 or q=0 gives the identity.
    pub fn extend_matrix(&self, p: usize, q: usize) -> Matrix {
        self.extension(p, q).to_matrix()
    }

    /// Same extension built by peeling tensor factors from the other side.
    /// The two constructions agree for every linear seed; the redundancy
    /// exists so tests can verify the coherence of the recursion.
    #[cfg(test)]
    pub(crate) fn extension_alternate(&self, p: usize, q: usize) -> ExtensionOp {
        ExtensionOp {
            dim_v: self.dim_v,
            dim_u: self.dim_u,
            p,
            q,
            layers: alternate_layers(p, q, self.dim_v, self.dim_u),
            seed: self.matrix.clone(),
        }
    }
}

/// A composition of layer maps `I_a ⊗ seed ⊗ I_b`, stored in application
/// order. Applying the operator to a coordinate vector costs one seed
/// application per (block, offset) pair per layer, which stays cheap even
/// when the ambient dimension is in the thousands.
#[derive(Debug, Clone)]
pub struct ExtensionOp {
    dim_v: usize,
    dim_u: usize,
    p: usize,
    q: usize,
    layers: Vec<(usize, usize)>,
    seed: Matrix,
}

impl ExtensionOp {
    /// Dimension of both the domain and the codomain.
    pub fn dim(&self) -> usize {
        self.dim_v.pow(self.p as u32) * self.dim_u.pow(self.q as u32)
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert!(
            v.len() == self.dim(),
            "extension applied to vector of length {}, expected {}",
            v.len(),
            self.dim()
        );
        let s = self.dim_v * self.dim_u;
        let mut cur = v.to_vec();
        for &(a, b) in &self.layers {
            debug_assert_eq!(a * s * b, cur.len());
            let mut next = cur.clone();
            for block in 0..a {
                for offset in 0..b {
                    let mut x = Vec::with_capacity(s);
                    for t in 0..s {
                        x.push(cur[block * s * b + t * b + offset].clone());
                    }
                    let y = self.seed.apply(&x);
                    for (t, val) in y.into_iter().enumerate() {
                        next[block * s * b + t * b + offset] = val;
                    }
                }
            }
            cur = next;
        }
        cur
    }

    pub fn to_matrix(&self) -> Matrix {
        let dim = self.dim();
        let mut out = Matrix::zeros(dim, dim);
        for col in 0..dim {
            let mut unit = vec![Scalar::zero(); dim];
            unit[col] = Scalar::one();
            let image = self.apply(&unit);
            for (row, val) in image.into_iter().enumerate() {
                if !val.is_zero() {
                    out.set(row, col, val);
                }
            }
        }
        out
    }
}

/// Layers for the extension built by first moving the U factor across the
/// leading V power, then peeling the remaining U factors one at a time.
fn primary_layers(p: usize, q: usize, n: usize, m: usize) -> Vec<(usize, usize)> {
    if p == 0 || q == 0 {
        return Vec::new();
    }
    let one_u = single_u_layers(p, n);
    if q == 1 {
        return one_u;
    }
    let mut layers: Vec<(usize, usize)> = one_u
        .iter()
        .map(|&(a, b)| (a * m.pow((q - 1) as u32), b))
        .collect();
    layers.extend(
        primary_layers(p, q - 1, n, m)
            .into_iter()
            .map(|(a, b)| (a, b * m)),
    );
    layers
}

/// Layers moving a single U factor across V^⊗p, peeling V from the left.
fn single_u_layers(p: usize, n: usize) -> Vec<(usize, usize)> {
    let mut layers = vec![(1, 1)];
    for k in 2..=p {
        for layer in layers.iter_mut() {
            layer.1 *= n;
        }
        layers.push((n.pow((k - 1) as u32), 1));
    }
    layers
}

#[cfg(test)]
fn alternate_layers(p: usize, q: usize, n: usize, m: usize) -> Vec<(usize, usize)> {
    if p == 0 || q == 0 {
        return Vec::new();
    }
    let one_u = alternate_single_u_layers(p, n);
    if q == 1 {
        return one_u;
    }
    let mut layers: Vec<(usize, usize)> = alternate_layers(p, q - 1, n, m)
        .into_iter()
        .map(|(a, b)| (a * m, b))
        .collect();
    layers.extend(
        one_u
            .iter()
            .map(|&(a, b)| (a, b * m.pow((q - 1) as u32))),
    );
    layers
}

#[cfg(test)]
fn alternate_single_u_layers(p: usize, n: usize) -> Vec<(usize, usize)> {
    let mut layers = vec![(1, 1)];
    for k in 2..=p {
        for layer in layers.iter_mut() {
            layer.0 *= n;
        }
        layers.insert(0, (1, n.pow((k - 1) as u32)));
    }
    layers
}
