//! Localization of a graded algebra at a regular normal element of
//! degree 2, realized at a single stable degree.
//!
//! For a certified normal element w with automorphism ν, classes a·w⁻ⁱ of
//! degree 0 form an algebra with the product (a·w⁻ⁱ)(b·w⁻ʲ) =
//! a·νⁱ(b)·w⁻ⁱ⁻ʲ. Once right multiplication by w is bijective between
//! consecutive even degrees, every class has a unique representative at
//! the first such degree, so the whole algebra lives on the normal words
//! there. [`stabilize`] finds that degree, [`clifford_algebra`] computes
//! exact structure constants on it, and [`evaluate_t_elements`] rewrites
//! the product table in the distinguished spanning set that exists when
//! the input is the dual of a triangular twisted product.

use thiserror::Error;

use crate::algebra::{AlgebraError, DegreeCache, FreeElement, QuadraticPresentation, Word};
use crate::findim::{FinDimAlgebra, FinDimError};
use crate::linalg::{LinAlgError, Matrix, Scalar, SolveOutcome};
use crate::normality::{
    extend_automorphism, regularity_window, verify_normal, NormalCertificate, NormalityError,
};
use crate::twist::Twist2x2;

/// How stabilization or the localized construction can fail.
#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("no stable degree up to index {max_i}; even-degree dimensions were {dims:?}")]
    NoStabilization { max_i: usize, dims: Vec<usize> },
    #[error("certificate failed re-verification: {detail}")]
    CertificateRejected { detail: &'static str },
    #[error("right multiplication by the normal element is not bijective from degree {degree}")]
    ChainNotBijective { degree: usize },
    #[error("pullback along the normal element has no unique solution at degree {degree}")]
    PullbackUnsolvable { degree: usize },
    #[error("the algebra vanishes at the stable degree")]
    Collapsed,
    #[error("twist blocks do not describe a valid triangular instance: {detail}")]
    WrongInstance { detail: &'static str },
    #[error("the unit and t-elements span dimension {rank}, expected {expected}")]
    TElementsDegenerate { rank: usize, expected: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Normality(#[from] NormalityError),
    #[error(transparent)]
    FinDim(#[from] FinDimError),
    #[error(transparent)]
    Lin(#[from] LinAlgError),
}

/// Outcome of [`stabilize`]: the first even degree where right
/// multiplication by the normal element becomes a bijection.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizationData {
    /// Stable index: dimensions agree between degrees 2i0 and 2i0+2.
    pub i0: usize,
    /// Dimensions of the even degrees 0, 2, …, 2(i0+1).
    pub dims: Vec<usize>,
    /// Matrix of right multiplication by the element from degree 2i0 to
    /// degree 2i0+2, square and invertible.
    pub mulw: Matrix,
}

/// The localized algebra on the basis of normal words at the stable
/// degree, together with the data identifying basis vectors with classes
/// a·w⁻ⁱ⁰.
#[derive(Debug, Clone)]
pub struct CliffordAlgebra {
    base: FinDimAlgebra,
    level: usize,
    basis: Vec<Word>,
    cert: NormalCertificate,
    cache: DegreeCache,
}

impl CliffordAlgebra {
    /// The structure-constant algebra.
    pub fn base(&self) -> &FinDimAlgebra {
        &self.base
    }

    /// Stable index i0: basis vectors are classes a·w⁻ⁱ⁰.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Normal words at degree 2·level, in basis order.
    pub fn basis_words(&self) -> &[Word] {
        &self.basis
    }

    /// The certificate the construction was verified against.
    pub fn certificate(&self) -> &NormalCertificate {
        &self.cert
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// Product table of the unit and the seven distinguished elements, with
/// every entry rewritten in that same spanning set.
#[derive(Debug, Clone, PartialEq)]
pub struct TElementTable {
    /// Coordinates of 1, t₁, …, t₇ in the stable normal-word basis.
    pub elements: Vec<Vec<Scalar>>,
    /// `table[i][j]` holds the coordinates of element i times element j
    /// over the ordered set {1, t₁, …, t₇}.
    pub table: Vec<Vec<Vec<Scalar>>>,
}

/// Finds the least index i0 ≤ `max_i` such that the even degrees 2i0 and
/// 2i0+2 have equal dimension and right multiplication by the certified
/// element between them is bijective.
///
/// The certificate is re-verified first: the element must still be
/// normal with the stored degree-one map, the map must extend to an
/// algebra automorphism, and the element must be regular on the checked
/// window. Failure to stabilize reports the observed dimensions, which
/// distinguishes unbounded growth from a too-small `max_i`.
pub fn stabilize(
    pres: &QuadraticPresentation,
    cert: &NormalCertificate,
    max_i: usize,
) -> Result<StabilizationData, CliffordError> {
    revalidate(pres, cert)?;
    let cache = DegreeCache::build(pres, 2 * max_i + 2)?;
    let mut dims = vec![cache.dim(0)?];
    for i in 0..=max_i {
        let h = cache.dim(2 * i)?;
        let h_next = cache.dim(2 * i + 2)?;
        dims.push(h_next);
        if h != h_next {
            continue;
        }
        let mulw = right_mult_matrix(&cache, 2 * i, &cert.element)?;
        if mulw.rank() == h {
            return Ok(StabilizationData { i0: i, dims, mulw });
        }
    }
    Err(CliffordError::NoStabilization { max_i, dims })
}

/// Builds the localized algebra at the stable degree found by
/// [`stabilize`].
///
/// The basis is the set of normal words of degree 2i0. The product of
/// classes [a] and [b] is a·νⁱ⁰(b), computed at degree 4i0 and pulled
/// back along the chain of right multiplications by the element, which
/// is verified to stay bijective degree by degree. The class of wⁱ⁰ is
/// the unit. The returned algebra has passed exact associativity and
/// unit checks on every basis triple.
pub fn clifford_algebra(
    pres: &QuadraticPresentation,
    cert: &NormalCertificate,
    stab: &StabilizationData,
) -> Result<CliffordAlgebra, CliffordError> {
    let i0 = stab.i0;
    let h = stab.dims[i0];
    if h == 0 {
        return Err(CliffordError::Collapsed);
    }
    let top = (4 * i0).max(2 * i0 + 4);
    let cache = DegreeCache::build(pres, top)?;
    if cache.dim(2 * i0)? != h {
        return Err(CliffordError::CertificateRejected {
            detail: "stabilization data does not match the presentation",
        });
    }
    // The pullback needs every step of ·w between degrees 2i0 and 4i0 to
    // be bijective; checking one step past 2i0+2 also confirms that the
    // dimension read off at i0 persists at i0+1.
    let mut chain = Vec::new();
    for d in (2 * i0..top).step_by(2) {
        let step = right_mult_matrix(&cache, d, &cert.element)?;
        if !step.is_square() || step.rank() != h {
            return Err(CliffordError::ChainNotBijective { degree: d });
        }
        chain.push(step);
    }
    let mut pullback = Matrix::identity(h);
    for step in chain.iter().take(i0) {
        pullback = step.mul(&pullback);
    }

    let g = pres.generator_count();
    let nu_class = automorphism_on_degree(&cache, &cert.nu1, 2 * i0, g)?;
    let mut nu_power = Matrix::identity(h);
    for _ in 0..i0 {
        nu_power = nu_class.mul(&nu_power);
    }

    let mut unit_elem = FreeElement::single(Word::empty(), Scalar::one());
    for _ in 0..i0 {
        unit_elem = cache.multiply(&unit_elem, &cert.element)?;
    }
    let unit = cache.normal_form(&unit_elem)?;

    let mut products = Vec::with_capacity(h * h);
    for i in 0..h {
        let mut e = vec![Scalar::zero(); h];
        e[i] = Scalar::one();
        let a = cache.class_to_element(2 * i0, &e)?;
        for j in 0..h {
            let b = cache.class_to_element(2 * i0, &nu_power.column(j))?;
            let prod = cache.multiply(&a, &b)?;
            products.push(cache.normal_form(&prod)?);
        }
    }
    let rhs = Matrix::from_fn(cache.dim(4 * i0)?, h * h, |r, c| products[c][r].clone());
    let solved = match pullback.solve_exact(&rhs) {
        SolveOutcome::Unique(x) => x,
        _ => return Err(CliffordError::PullbackUnsolvable { degree: 2 * i0 }),
    };
    let constants: Vec<Vec<Vec<Scalar>>> = (0..h)
        .map(|i| (0..h).map(|j| solved.column(i * h + j)).collect())
        .collect();
    let base = FinDimAlgebra::new(unit, constants)?;
    Ok(CliffordAlgebra {
        base,
        level: i0,
        basis: cache.normal_words(2 * i0)?.to_vec(),
        cert: cert.clone(),
        cache,
    })
}

/// Rewrites the localized algebra of a triangular twisted product dual
/// in its distinguished spanning set.
///
/// The blocks must be the diagonal-shape triangular instance the algebra
/// was built from; its six coefficients define seven elements t₁, …, t₇
/// at levels 1 and 2, which together with the unit must span the whole
/// algebra. The result lists their coordinates and the full product
/// table over {1, t₁, …, t₇}.
pub fn evaluate_t_elements(
    cliff: &CliffordAlgebra,
    blocks: &Twist2x2,
) -> Result<TElementTable, CliffordError> {
    if !blocks.is_diagonal_shape() {
        return Err(CliffordError::WrongInstance {
            detail: "off-diagonal blocks must vanish",
        });
    }
    if !blocks.c().is_lower_triangular() || !blocks.q().is_lower_triangular() {
        return Err(CliffordError::WrongInstance {
            detail: "diagonal blocks must be lower triangular",
        });
    }
    let a11 = blocks.c().get(0, 0).clone();
    let a21 = blocks.c().get(1, 0).clone();
    let a22 = blocks.c().get(1, 1).clone();
    let b11 = blocks.q().get(0, 0).clone();
    let b21 = blocks.q().get(1, 0).clone();
    let b22 = blocks.q().get(1, 1).clone();
    if a11.is_zero() || a22.is_zero() || b11.is_zero() || b22.is_zero() {
        return Err(CliffordError::WrongInstance {
            detail: "diagonal coefficients must be nonzero",
        });
    }
    if &(&a11 * &b21) + &(&a21 * &b22) != &(&a21 * &b11) + &(&a22 * &b21) {
        return Err(CliffordError::WrongInstance {
            detail: "coefficients violate the commutation constraint",
        });
    }
    if cliff.cache.presentation().generator_count() != 4 {
        return Err(CliffordError::WrongInstance {
            detail: "the algebra does not have four generators",
        });
    }

    // Generators of the dual in basis order: X, Y, Z, W.
    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;
    const W: usize = 3;
    let pair = |p: usize, q: usize, c: Scalar| (Word::new(vec![p, q]), c);
    let t7_coeff = &(&(&a11 * &a11) * &a22) / &b22;
    let level_one: Vec<FreeElement> = [
        vec![pair(Y, W, a22.clone())],
        vec![pair(Y, X, a11.clone())],
        vec![pair(Y, Z, a11.clone()), pair(Y, W, a21.clone())],
        vec![pair(W, X, b11.clone()), pair(W, Y, b21.clone())],
        vec![pair(W, Z, b11.clone())],
        vec![pair(X, Z, a11.clone()), pair(X, W, a21.clone())],
    ]
    .into_iter()
    .map(|terms| FreeElement::from_terms(2, terms))
    .collect::<Result<_, _>>()?;
    let t7 = FreeElement::single(Word::new(vec![Y, X, W, Z]), t7_coeff);

    let mut elements = vec![cliff.base.unit().to_vec()];
    for t in &level_one {
        elements.push(express_at_level(cliff, t.clone())?);
    }
    elements.push(express_at_level(cliff, t7)?);

    let h = cliff.dim();
    let span = Matrix::from_fn(h, elements.len(), |r, c| elements[c][r].clone());
    let rank = span.rank();
    if rank != h || elements.len() != h {
        return Err(CliffordError::TElementsDegenerate { rank, expected: h });
    }
    let inverse = span
        .inverse()
        .expect("a square full-rank matrix is invertible");
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| inverse.apply(&cliff.base.multiply(a, b)))
                .collect()
        })
        .collect();
    Ok(TElementTable { elements, table })
}

/// Coordinates at the stable level of the class `elem·w^(−deg/2)`.
///
/// Elements below the stable level are lifted by multiplying with the
/// normal element; elements above it are pulled back through the
/// bijective chain.
fn express_at_level(
    cliff: &CliffordAlgebra,
    elem: FreeElement,
) -> Result<Vec<Scalar>, CliffordError> {
    let i0 = cliff.level;
    let l = elem.degree() / 2;
    if l <= i0 {
        let mut e = elem;
        for _ in l..i0 {
            e = cliff.cache.multiply(&e, &cliff.cert.element)?;
        }
        Ok(cliff.cache.normal_form(&e)?)
    } else {
        let coords = cliff.cache.normal_form(&elem)?;
        let mut chain = Matrix::identity(cliff.dim());
        for d in (2 * i0..2 * l).step_by(2) {
            chain = right_mult_matrix(&cliff.cache, d, &cliff.cert.element)?.mul(&chain);
        }
        let rhs = Matrix::from_fn(coords.len(), 1, |r, _| coords[r].clone());
        match chain.solve_exact(&rhs) {
            SolveOutcome::Unique(x) => Ok(x.column(0)),
            _ => Err(CliffordError::PullbackUnsolvable { degree: 2 * i0 }),
        }
    }
}

/// Matrix of right multiplication by `w` from degree `d` to `d + deg w`,
/// on normal-word coordinates.
fn right_mult_matrix(
    cache: &DegreeCache,
    d: usize,
    w: &FreeElement,
) -> Result<Matrix, AlgebraError> {
    let h = cache.dim(d)?;
    let mut cols = Vec::with_capacity(h);
    for i in 0..h {
        let mut e = vec![Scalar::zero(); h];
        e[i] = Scalar::one();
        let a = cache.class_to_element(d, &e)?;
        let prod = cache.multiply(&a, w)?;
        cols.push(cache.normal_form(&prod)?);
    }
    Ok(Matrix::from_fn(
        cache.dim(d + w.degree())?,
        h,
        |r, c| cols[c][r].clone(),
    ))
}

/// Matrix of the degree-`d` action induced by a degree-one automorphism
/// matrix, on normal-word coordinates.
fn automorphism_on_degree(
    cache: &DegreeCache,
    nu1: &Matrix,
    d: usize,
    g: usize,
) -> Result<Matrix, AlgebraError> {
    let mut free = Matrix::identity(1);
    for _ in 0..d {
        free = free.kron(nu1);
    }
    let words = cache.normal_words(d)?;
    let mut cols = Vec::with_capacity(words.len());
    for u in words {
        let image = free.column(u.index(g));
        let elem = FreeElement::from_vector(d, g, &image);
        cols.push(cache.normal_form(&elem)?);
    }
    Ok(Matrix::from_fn(cols.len(), cols.len(), |r, c| {
        cols[c][r].clone()
    }))
}

fn revalidate(
    pres: &QuadraticPresentation,
    cert: &NormalCertificate,
) -> Result<(), CliffordError> {
    let fresh = verify_normal(pres, &cert.element)?;
    if fresh.nu1 != cert.nu1 {
        return Err(CliffordError::CertificateRejected {
            detail: "stored degree-one map differs from the verified one",
        });
    }
    if !extend_automorphism(pres, &cert.nu1)? {
        return Err(CliffordError::CertificateRejected {
            detail: "degree-one map does not extend to an automorphism",
        });
    }
    if !regularity_window(pres, &cert.element, cert.checked_degree)?.pass() {
        return Err(CliffordError::CertificateRejected {
            detail: "element is not regular on the checked window",
        });
    }
    Ok(())
}
