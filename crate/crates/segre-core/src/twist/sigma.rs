//! The generator-action system of a twist on the A side.
//!
//! A seed determines, for every pair of B-side indices (i,j), a linear map
//! on the span of the A generators. Collected into a matrix of maps these
//! define a homomorphism from A into m×m matrices over A, and the twist is
//! diagonal exactly when all off-diagonal components vanish.

use super::{TwistData, TwistError};
use crate::algebra::QuadraticPresentation;
use crate::linalg::Matrix;

/// The m×m array of degree-1 component maps of a twist, acting on V by
/// column convention, together with the A-side presentation they must
/// respect.
#[derive(Debug, Clone)]
pub struct SigmaHom {
    dim_v: usize,
    dim_u: usize,
    /// Component (i,j) at index `i·dim_u + j`.
    components: Vec<Matrix>,
    pres_a: QuadraticPresentation,
}

impl SigmaHom {
    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn component(&self, i: usize, j: usize) -> &Matrix {
        assert!(i < self.dim_u && j < self.dim_u, "component index out of range");
        &self.components[i * self.dim_u + j]
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.pres_a
    }

    /// True when every off-diagonal component is the zero map.
    pub fn is_diagonal(&self) -> bool {
        (0..self.dim_u).all(|i| {
            (0..self.dim_u).all(|j| i == j || self.component(i, j).is_zero())
        })
    }
}

/// Reads the component maps off the seed matrix.
pub fn sigma_of(twist: &TwistData) -> SigmaHom {
    let n = twist.seed().dim_v();
    let m = twist.seed().dim_u();
    let seed = twist.seed().matrix();
    let mut components = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            components.push(Matrix::from_fn(n, n, |t, s| {
                seed.get(t * m + j, i * n + s).clone()
            }));
        }
    }
    SigmaHom {
        dim_v: n,
        dim_u: m,
        components,
        pres_a: twist.pres_a().clone(),
    }
}

/// Checks that the component system defines an algebra homomorphism on all
/// cached degrees: the degree-d extension of every component pair must map
/// the degree-d relation slice of A into itself, for 2 ≤ d ≤ max_degree.
pub fn validate_sigma(sigma: &SigmaHom, max_degree: usize) -> Result<bool, TwistError> {
    let m = sigma.dim_u;
    // Degree-d component maps, built one degree at a time: the degree-d
    // map (i,j) sums over intermediate indices the tensor product of the
    // degree-(d−1) map (i,k) with the degree-1 map (k,j).
    let mut current: Vec<Matrix> = sigma.components.clone();
    for d in 2..=max_degree {
        let dim_prev = sigma.dim_v.pow((d - 1) as u32);
        let dim_here = dim_prev * sigma.dim_v;
        let mut next = vec![Matrix::zeros(dim_here, dim_here); m * m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = Matrix::zeros(dim_here, dim_here);
                for k in 0..m {
                    let left = &current[i * m + k];
                    let right = sigma.component(k, j);
                    acc = acc.add(&left.kron(right));
                }
                next[i * m + j] = acc;
            }
        }
        current = next;
        let slice = sigma.pres_a.relation_space(d)?;
        let basis = slice.basis();
        for map in &current {
            for r in 0..basis.rows() {
                let image = map.apply(basis.row(r));
                if !slice.contains(&image)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Solves for the inverse component system: the τ array satisfying both
/// composition identities with σ (summing τ∘σ or σ∘τ over the middle index
/// gives the identity for matching outer indices and zero otherwise).
///
/// The solve always succeeds for components read off an invertible seed;
/// failure therefore signals inconsistent input and is reported as such.
pub fn invert_sigma(sigma: &SigmaHom) -> Result<SigmaHom, TwistError> {
    let n = sigma.dim_v;
    let m = sigma.dim_u;
    // Both identities together say that the blockwise-transposed component
    // matrix is a two-sided inverse of the corresponding matrix for τ.
    let assembled = Matrix::from_fn(m * n, m * n, |row, col| {
        let (j, r) = (row / n, row % n);
        let (k, c) = (col / n, col % n);
        sigma.component(j, k).get(c, r).clone()
    });
    let inverse = assembled
        .inverse()
        .ok_or_else(|| TwistError::SigmaInversion("component matrix is singular".into()))?;
    let mut components = Vec::with_capacity(m * m);
    for k in 0..m {
        for i in 0..m {
            components.push(Matrix::from_fn(n, n, |r, c| {
                inverse.get(k * n + c, i * n + r).clone()
            }));
        }
    }
    let tau = SigmaHom {
        dim_v: n,
        dim_u: m,
        components,
        pres_a: sigma.pres_a.clone(),
    };
    for i in 0..m {
        for j in 0..m {
            let mut first = Matrix::zeros(n, n);
            let mut second = Matrix::zeros(n, n);
            for k in 0..m {
                first = first.add(&tau.component(k, i).mul(sigma.component(j, k)));
                second = second.add(&sigma.component(k, i).mul(tau.component(j, k)));
            }
            let expected = if i == j {
                Matrix::identity(n)
            } else {
                Matrix::zeros(n, n)
            };
            if first != expected || second != expected {
                return Err(TwistError::SigmaInversion(format!(
                    "composition identity failed at component ({i},{j})"
                )));
            }
        }
    }
    Ok(tau)
}
