//! Frozen reference data for the integration suites.
//!
//! Everything here was worked out by hand for the lower-triangular
//! two-generator family and then hard-coded: relation systems, the normal
//! elements with their commutation matrices, the eight-element matrix
//! assignment, and the full multiplication table of the classification
//! target. The suites compare library output against these numbers rather
//! than against anything the library computed itself.
//!
//! Generator bookkeeping for the product algebras: both tensor factors are
//! polynomial rings on two variables, `A = k[u, v]` and `B = k[x, y]`, and
//! the product generators are ordered `X = u*x`, `Y = v*x`, `Z = u*y`,
//! `W = v*y`, so letters 0..=3 mean X, Y, Z, W throughout.

use segre_core::{
    FreeElement, GeneratorSet, Matrix, MatrixPair, QuadraticPresentation, Scalar, Twist2x2,
    TwistData, Word,
};

/// Seed shared by every seeded sweep in the suites, matching the command
/// line default.
pub const DEFAULT_SEED: u64 = 20260821;

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn word(letters: &[usize]) -> Word {
    Word::new(letters.to_vec())
}

/// Element from `(letters, coefficient)` pairs; the degree is read off the
/// first word, so the slice must be nonempty and homogeneous.
pub fn element(terms: &[(&[usize], Scalar)]) -> FreeElement {
    let degree = terms[0].0.len();
    FreeElement::from_terms(degree, terms.iter().map(|(w, c)| (word(w), c.clone()))).unwrap()
}

fn grid2(entries: [[i64; 2]; 2]) -> Matrix {
    Matrix::from_rows(entries.iter().map(|r| r.iter().map(|&n| s(n)).collect()).collect())
        .unwrap()
}

/// Structure coefficients of one member of the family. The twisting map
/// acts on the A side through the lower-triangular block
/// `[[a11, 0], [a21, a22]]` and on the B side through
/// `[[b11, 0], [b21, b22]]`; the diagonal entries must be nonzero and the
/// two blocks must commute.
#[derive(Debug, Clone)]
pub struct Coeffs {
    pub a11: Scalar,
    pub a21: Scalar,
    pub a22: Scalar,
    pub b11: Scalar,
    pub b21: Scalar,
    pub b22: Scalar,
}

impl Coeffs {
    pub fn new(a: [i64; 3], b: [i64; 3]) -> Self {
        Coeffs {
            a11: s(a[0]),
            a21: s(a[1]),
            a22: s(a[2]),
            b11: s(b[0]),
            b21: s(b[1]),
            b22: s(b[2]),
        }
    }

    /// Both blocks are the unipotent matrix `[[1, 0], [1, 1]]`.
    pub fn unipotent() -> Self {
        Coeffs::new([1, 1, 1], [1, 1, 1])
    }

    /// Diagonal blocks `diag(1, 2)` and `diag(3, 1)`. This is the instance
    /// whose graded module category does not match its untwisted shadow.
    pub fn diagonal_instance() -> Self {
        Coeffs::new([1, 0, 2], [3, 0, 1])
    }

    /// All six coefficients nonzero: blocks `[[2, 0], [1, 3]]` on both
    /// sides, which commute because they are equal.
    pub fn mixed_instance() -> Self {
        Coeffs::new([2, 1, 3], [2, 1, 3])
    }

    /// Equal diagonal blocks `diag(2, 1)`, the instance whose twisted and
    /// untwisted products share a graded module category.
    pub fn balanced_instance() -> Self {
        Coeffs::new([2, 0, 1], [2, 0, 1])
    }

    pub fn c_block(&self) -> Matrix {
        Matrix::from_rows(vec![
            vec![self.a11.clone(), s(0)],
            vec![self.a21.clone(), self.a22.clone()],
        ])
        .unwrap()
    }

    pub fn q_block(&self) -> Matrix {
        Matrix::from_rows(vec![
            vec![self.b11.clone(), s(0)],
            vec![self.b21.clone(), self.b22.clone()],
        ])
        .unwrap()
    }

    pub fn blocks(&self) -> Twist2x2 {
        Twist2x2::diagonal(self.c_block(), self.q_block())
    }

    /// Twist data over `k[u, v]` and `k[x, y]` with these blocks.
    pub fn twist(&self) -> TwistData {
        let seed = self.blocks().to_seed().unwrap();
        let a = QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["u", "v"]));
        let b = QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["x", "y"]));
        TwistData::new(seed, a, b).unwrap()
    }

    /// The seven quadratic relations of the twisted product, in the fixed
    /// order f1..f7.
    pub fn product_relations(&self) -> Vec<FreeElement> {
        let Coeffs {
            a11,
            a21,
            a22,
            b11,
            b21,
            b22,
        } = self;
        let neg = |x: &Scalar| -x.clone();
        vec![
            // f1 = a11 XY - a22 YX - a21 XX
            element(&[
                (&[0, 1], a11.clone()),
                (&[1, 0], neg(a22)),
                (&[0, 0], neg(a21)),
            ]),
            // f2 = a11 ZX - b11 XZ
            element(&[(&[2, 0], a11.clone()), (&[0, 2], neg(b11))]),
            // f3 = a11 ZY - b21 XZ - b22 YZ
            element(&[
                (&[2, 1], a11.clone()),
                (&[0, 2], neg(b21)),
                (&[1, 2], neg(b22)),
            ]),
            // f4 = a11 a22 WX + a21 b11 XZ - a11 b11 XW
            element(&[
                (&[3, 0], a11 * a22),
                (&[0, 2], a21 * b11),
                (&[0, 3], neg(&(a11 * b11))),
            ]),
            // f5 = a11 a22 WY + a21 b21 XZ + a21 b22 YZ - a11 b21 XW - a11 b22 YW
            element(&[
                (&[3, 1], a11 * a22),
                (&[0, 2], a21 * b21),
                (&[1, 2], a21 * b22),
                (&[0, 3], neg(&(a11 * b21))),
                (&[1, 3], neg(&(a11 * b22))),
            ]),
            // f6 = b11 ZW - b22 WZ - b21 ZZ
            element(&[
                (&[2, 3], b11.clone()),
                (&[3, 2], neg(b22)),
                (&[2, 2], neg(b21)),
            ]),
            // f7 = a11 XW - a22 YZ - a21 XZ
            element(&[
                (&[0, 3], a11.clone()),
                (&[1, 2], neg(a22)),
                (&[0, 2], neg(a21)),
            ]),
        ]
    }

    /// The first six product relations. They cut out the larger algebra in
    /// which f7 is a regular normal element, with the Hilbert function of a
    /// polynomial ring on four variables.
    pub fn ambient_relations(&self) -> Vec<FreeElement> {
        let mut rels = self.product_relations();
        rels.truncate(6);
        rels
    }

    pub fn product_generators(&self) -> GeneratorSet {
        GeneratorSet::from_labels(&["X", "Y", "Z", "W"])
    }

    pub fn ambient_presentation(&self) -> QuadraticPresentation {
        QuadraticPresentation::new(self.product_generators(), &self.ambient_relations()).unwrap()
    }

    pub fn product_presentation(&self) -> QuadraticPresentation {
        QuadraticPresentation::new(self.product_generators(), &self.product_relations()).unwrap()
    }

    /// The nine quadratic relations of the dual of the twisted product.
    pub fn dual_relations(&self) -> Vec<FreeElement> {
        let Coeffs {
            a11,
            a21,
            a22,
            b11,
            b21,
            b22,
        } = self;
        vec![
            // g1 = a11 YX + a22 XY
            element(&[(&[1, 0], a11.clone()), (&[0, 1], a22.clone())]),
            // g2 = a11 XZ + a21 XW + b11 ZX + b21 ZY
            element(&[
                (&[0, 2], a11.clone()),
                (&[0, 3], a21.clone()),
                (&[2, 0], b11.clone()),
                (&[2, 1], b21.clone()),
            ]),
            // g3 = b22 WY + a22 YW
            element(&[(&[3, 1], b22.clone()), (&[1, 3], a22.clone())]),
            // g4 = b22 ZW + b11 WZ
            element(&[(&[2, 3], b22.clone()), (&[3, 2], b11.clone())]),
            // g5 = a11 XX + a21 XY
            element(&[(&[0, 0], a11.clone()), (&[0, 1], a21.clone())]),
            // g6 = YY
            element(&[(&[1, 1], s(1))]),
            // g7 = b11 ZZ + b21 ZW
            element(&[(&[2, 2], b11.clone()), (&[2, 3], b21.clone())]),
            // g8 = WW
            element(&[(&[3, 3], s(1))]),
            // g9 = b22 ZY + a21 YW + a11 YZ + a22 XW + b11 WX + b21 WY
            element(&[
                (&[2, 1], b22.clone()),
                (&[1, 3], a21.clone()),
                (&[1, 2], a11.clone()),
                (&[0, 3], a22.clone()),
                (&[3, 0], b11.clone()),
                (&[3, 1], b21.clone()),
            ]),
        ]
    }

    /// The regular normal element of the dual: `b22 ZY + a21 YW + a11 YZ`.
    pub fn w_element(&self) -> FreeElement {
        element(&[
            (&[2, 1], self.b22.clone()),
            (&[1, 3], self.a21.clone()),
            (&[1, 2], self.a11.clone()),
        ])
    }

    /// The seventh product relation, normal in the six-relation ambient
    /// algebra.
    pub fn f7_element(&self) -> FreeElement {
        self.product_relations().pop().unwrap()
    }

    /// Commutation matrix of [`Coeffs::w_element`] in the dual, acting on
    /// columns: entry `(j, i)` is the coefficient of generator `j` in the
    /// image of generator `i`, and `g * w = w * nu(g)` for every
    /// generator `g`.
    pub fn nu_w_matrix(&self) -> Matrix {
        let Coeffs {
            a11,
            a21,
            a22,
            b11,
            b21,
            b22,
        } = self;
        let aa = a11 * a22;
        let bb = b11 * b22;
        let cross = &(a11 * b21) + &(a21 * b22);
        Matrix::from_rows(vec![
            vec![&(a11 * b11) / &aa, s(0), s(0), s(0)],
            vec![&cross / &aa, b22 / a11, s(0), s(0)],
            vec![s(0), s(0), &(a11 * b11) / &bb, s(0)],
            vec![s(0), s(0), &cross / &bb, a22 / b11],
        ])
        .unwrap()
    }

    /// Commutation matrix of [`Coeffs::f7_element`] in the ambient algebra,
    /// same column convention as [`Coeffs::nu_w_matrix`].
    pub fn nu_f7_matrix(&self) -> Matrix {
        let Coeffs {
            a11,
            a21,
            a22,
            b11,
            b21,
            b22,
        } = self;
        let aa = a11 * a22;
        let bb = b11 * b22;
        let cross = &(a11 * b21) + &(a21 * b22);
        Matrix::from_rows(vec![
            vec![a22 / b11, -(&cross / &bb), s(0), s(0)],
            vec![s(0), a11 / b22, s(0), s(0)],
            vec![s(0), s(0), b22 / a11, -(&cross / &aa)],
            vec![s(0), s(0), s(0), b11 / a22],
        ])
        .unwrap()
    }
}

/// A lower-triangular pair whose blocks do not commute, so the twist
/// conditions fail.
pub fn noncommuting_blocks() -> Twist2x2 {
    Twist2x2::diagonal(grid2([[1, 0], [1, 1]]), grid2([[2, 0], [0, 1]]))
}

/// Degree-d dimension of the twisted product: `(d + 1)^2`.
pub fn product_hilbert(d: usize) -> usize {
    (d + 1) * (d + 1)
}

/// Degree-d dimension of the six-relation ambient algebra, the binomial
/// `C(d + 3, 3)` of a polynomial ring on four variables.
pub fn ambient_hilbert(d: usize) -> usize {
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Degree-d dimension of the dual of the twisted product: 1, 4, 7, then 8
/// forever.
pub fn dual_hilbert(d: usize) -> usize {
    match d {
        0 => 1,
        1 => 4,
        2 => 7,
        _ => 8,
    }
}

/// The eight matrix pairs assigned to the classification basis
/// `[1, t1, ..., t7]`, in that order.
pub fn rho_images() -> Vec<MatrixPair> {
    let pair = |first: [[i64; 2]; 2], second: [[i64; 2]; 2]| MatrixPair {
        first: grid2(first),
        second: grid2(second),
    };
    let id = [[1, 0], [0, 1]];
    let zero = [[0, 0], [0, 0]];
    let e11 = [[1, 0], [0, 0]];
    let e12 = [[0, 1], [0, 0]];
    let e21 = [[0, 0], [1, 0]];
    let e22 = [[0, 0], [0, 1]];
    let neg = |m: [[i64; 2]; 2]| [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]];
    vec![
        pair(id, id),
        pair(e12, zero),
        pair(zero, e12),
        pair(e11, e11),
        pair(neg(e11), neg(e22)),
        pair(zero, neg(e21)),
        pair(neg(e21), zero),
        pair(zero, neg(e11)),
    ]
}

/// The full multiplication table of the eight-dimensional classification
/// algebra over the basis `[1, t1, ..., t7]`: entry `[i][j]` is the
/// coordinate vector of `basis[i] * basis[j]`. The table is the same for
/// every member of the family.
pub fn expected_t_table() -> Vec<Vec<Vec<Scalar>>> {
    let coords = |terms: &[(usize, i64)]| {
        let mut v = vec![s(0); 8];
        for &(idx, c) in terms {
            v[idx] = s(c);
        }
        v
    };
    let mut table = vec![vec![coords(&[]); 8]; 8];
    for j in 0..8 {
        table[0][j] = coords(&[(j, 1)]);
        table[j][0] = coords(&[(j, 1)]);
    }
    table[1][6] = coords(&[(3, -1), (7, -1)]);
    table[2][4] = coords(&[(2, -1)]);
    table[2][5] = coords(&[(7, 1)]);
    table[3][1] = coords(&[(1, 1)]);
    table[3][2] = coords(&[(2, 1)]);
    table[3][3] = coords(&[(3, 1)]);
    table[3][4] = coords(&[(3, -1), (7, -1)]);
    table[3][7] = coords(&[(7, 1)]);
    table[4][1] = coords(&[(1, -1)]);
    table[4][3] = coords(&[(3, -1), (7, -1)]);
    table[4][4] = coords(&[(4, -1)]);
    table[4][5] = coords(&[(5, -1)]);
    table[5][2] = coords(&[(3, 1), (4, 1), (7, 1)]);
    table[5][3] = coords(&[(5, 1)]);
    table[5][7] = coords(&[(5, -1)]);
    table[6][1] = coords(&[(0, -1), (4, -1), (7, -1)]);
    table[6][3] = coords(&[(6, 1)]);
    table[6][4] = coords(&[(6, -1)]);
    table[7][2] = coords(&[(2, -1)]);
    table[7][3] = coords(&[(7, 1)]);
    table[7][7] = coords(&[(7, -1)]);
    table
}
