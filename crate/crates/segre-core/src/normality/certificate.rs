//! Verification and certification of degree-2 normal elements.

use crate::algebra::{transform_relations, DegreeCache, FreeElement, QuadraticPresentation, Word};
use crate::linalg::{Matrix, Scalar, SolveOutcome};

use super::NormalityError;

/// A verified normal element together with its normalizing map.
///
/// The matrix acts on columns: generator `x_i` maps to the element with
/// coordinates in column `i`, and the defining identity is
/// `x_i w = w nu(x_i)` in degree 3. `checked_degree` records how far the
/// identity `a w = w nu(a)` has been confirmed on bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalCertificate {
    pub element: FreeElement,
    pub nu1: Matrix,
    pub checked_degree: usize,
}

/// Checks that `w` is normal and solves for its normalizing map.
///
/// The returned certificate has `checked_degree` 3, the degree where the
/// defining identity lives; use [`extend_checked_window`] to confirm it on
/// higher-degree bases.
pub fn verify_normal(
    pres: &QuadraticPresentation,
    w: &FreeElement,
) -> Result<NormalCertificate, NormalityError> {
    let cache = DegreeCache::build(pres, 3)?;
    verify_with_cache(&cache, w)
}

/// [`verify_normal`] against a prebuilt cache covering degree 3.
pub(crate) fn verify_with_cache(
    cache: &DegreeCache,
    w: &FreeElement,
) -> Result<NormalCertificate, NormalityError> {
    if w.degree() != 2 {
        return Err(NormalityError::NotDegreeTwo { degree: w.degree() });
    }
    let pres = cache.presentation();
    let g = pres.generator_count();
    let w_coords = cache.normal_form(w)?;
    if w_coords.iter().all(Scalar::is_zero) {
        return Err(NormalityError::ZeroElement);
    }
    let h3 = cache.dim(3)?;

    let mut right_cols = Vec::with_capacity(g);
    for j in 0..g {
        right_cols.push(cache.apply_letter(2, &w_coords, j)?);
    }
    let mut left_cols = vec![vec![Scalar::zero(); h3]; g];
    for i in 0..g {
        for (word, c) in w.terms() {
            let shifted = Word::new(vec![i]).concat(word);
            for (slot, v) in cache.word_class(&shifted)?.into_iter().enumerate() {
                if !v.is_zero() {
                    left_cols[i][slot] += v * c;
                }
            }
        }
    }

    let wmat = Matrix::from_fn(h3, g, |r, c| right_cols[c][r].clone());
    let rhs = Matrix::from_fn(h3, g, |r, c| left_cols[c][r].clone());
    match wmat.solve_exact(&rhs) {
        SolveOutcome::Unique(nu1) => Ok(NormalCertificate {
            element: w.clone(),
            nu1,
            checked_degree: 3,
        }),
        SolveOutcome::Inconsistent { column } => Err(NormalityError::NotNormal {
            generator: pres.gens().label(column).to_string(),
        }),
        SolveOutcome::Underdetermined => Err(NormalityError::NonUniqueNormalizer),
    }
}

/// Re-certifies `a w = w nu(a)` for a basis of every degree up to
/// `degree - 2`, where `nu` extends `nu1` letterwise.
///
/// The identity on generators already propagates to words by
/// associativity, so this is a consistency sweep rather than new
/// information; a mismatch means the certificate (or the algebra it was
/// minted for) is wrong.
pub fn extend_checked_window(
    pres: &QuadraticPresentation,
    cert: &NormalCertificate,
    degree: usize,
) -> Result<NormalCertificate, NormalityError> {
    if degree <= cert.checked_degree {
        return Ok(cert.clone());
    }
    let cache = DegreeCache::build(pres, degree)?;
    let g = pres.generator_count();
    let w_coords = cache.normal_form(&cert.element)?;
    if w_coords.iter().all(Scalar::is_zero) {
        return Err(NormalityError::ZeroElement);
    }
    let w_elem = cache.class_to_element(2, &w_coords)?;

    let mut nu_power = Matrix::identity(1);
    for d in 1..=degree.saturating_sub(2) {
        nu_power = nu_power.kron(&cert.nu1);
        for u in cache.normal_words(d)? {
            let u_elem = FreeElement::single(u.clone(), Scalar::one());
            let lhs = cache.normal_form(&cache.multiply(&u_elem, &w_elem)?)?;
            let image = nu_power.column(u.index(g));
            let nu_u = FreeElement::from_vector(d, g, &image);
            let rhs = cache.normal_form(&cache.multiply(&w_elem, &nu_u)?)?;
            if lhs != rhs {
                return Err(NormalityError::ExtensionMismatch { degree: d });
            }
        }
    }
    Ok(NormalCertificate {
        element: cert.element.clone(),
        nu1: cert.nu1.clone(),
        checked_degree: degree,
    })
}

/// Whether `nu1` is invertible and preserves the relation subspace, so
/// that it extends to a graded algebra automorphism.
pub fn extend_automorphism(
    pres: &QuadraticPresentation,
    nu1: &Matrix,
) -> Result<bool, NormalityError> {
    if nu1.inverse().is_none() {
        return Ok(false);
    }
    let transformed = transform_relations(pres, nu1)?;
    Ok(transformed.equal(pres.relation_subspace())?)
}

/// Ranks of multiplication by a fixed element on one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityRow {
    pub degree: usize,
    pub dim: usize,
    pub left_rank: usize,
    pub right_rank: usize,
}

/// Injectivity data for multiplication by a degree-2 element across a
/// window of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub rows: Vec<RegularityRow>,
}

impl RegularityReport {
    /// True when both multiplications are injective on every checked
    /// degree, the window-sized evidence for regularity.
    pub fn pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.left_rank == r.dim && r.right_rank == r.dim)
    }
}

/// Measures left and right multiplication by `w` on all degrees `d` with
/// `d + 2 <= degree`.
pub fn regularity_window(
    pres: &QuadraticPresentation,
    w: &FreeElement,
    degree: usize,
) -> Result<RegularityReport, NormalityError> {
    if w.degree() != 2 {
        return Err(NormalityError::NotDegreeTwo { degree: w.degree() });
    }
    let cache = DegreeCache::build(pres, degree.max(2))?;
    let w_coords = cache.normal_form(w)?;
    if w_coords.iter().all(Scalar::is_zero) {
        return Err(NormalityError::ZeroElement);
    }
    let w_elem = cache.class_to_element(2, &w_coords)?;

    let mut rows = Vec::new();
    for d in 0..=degree.saturating_sub(2) {
        let dim = cache.dim(d)?;
        let mut left_cols = Vec::with_capacity(dim);
        let mut right_cols = Vec::with_capacity(dim);
        for u in cache.normal_words(d)? {
            let u_elem = FreeElement::single(u.clone(), Scalar::one());
            left_cols.push(cache.normal_form(&cache.multiply(&w_elem, &u_elem)?)?);
            right_cols.push(cache.normal_form(&cache.multiply(&u_elem, &w_elem)?)?);
        }
        let target = cache.dim(d + 2)?;
        let left = Matrix::from_fn(target, dim, |r, c| left_cols[c][r].clone());
        let right = Matrix::from_fn(target, dim, |r, c| right_cols[c][r].clone());
        rows.push(RegularityRow {
            degree: d,
            dim,
            left_rank: left.rank(),
            right_rank: right.rank(),
        });
    }
    Ok(RegularityReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorSet;
    use crate::normality::NormalityError;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn element(terms: &[(&[usize], i64)]) -> FreeElement {
        FreeElement::from_terms(
            2,
            terms
                .iter()
                .map(|(w, c)| (Word::new(w.to_vec()), s(*c))),
        )
        .unwrap()
    }

    fn two_gen(relations: &[FreeElement]) -> QuadraticPresentation {
        QuadraticPresentation::new(GeneratorSet::from_labels(&["x", "y"]), relations).unwrap()
    }

    /// k[x, y].
    fn poly2() -> QuadraticPresentation {
        QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["x", "y"]))
    }

    /// xy = 2 yx.
    fn skew_plane() -> QuadraticPresentation {
        two_gen(&[element(&[(&[0, 1], 1), (&[1, 0], -2)])])
    }

    /// yx = 0.
    fn half_zero() -> QuadraticPresentation {
        two_gen(&[element(&[(&[1, 0], 1)])])
    }

    #[test]
    fn central_product_in_the_polynomial_ring() {
        let pres = poly2();
        let w = element(&[(&[0, 1], 1)]);
        let cert = verify_normal(&pres, &w).unwrap();
        assert_eq!(cert.nu1, Matrix::identity(2));
        assert_eq!(cert.checked_degree, 3);
        assert_eq!(cert.element, w);

        let wider = extend_checked_window(&pres, &cert, 6).unwrap();
        assert_eq!(wider.checked_degree, 6);
        assert_eq!(wider.nu1, cert.nu1);
    }

    #[test]
    fn scaling_the_element_keeps_the_map() {
        let pres = skew_plane();
        let w = element(&[(&[0, 0], 1)]);
        let scaled = w.scale(&s(5));
        let a = verify_normal(&pres, &w).unwrap();
        let b = verify_normal(&pres, &scaled).unwrap();
        assert_eq!(a.nu1, b.nu1);
    }

    #[test]
    fn skew_commutation_scales_the_map() {
        // In xy = 2yx: y x^2 = (1/4) x^2 y, so nu fixes x and quarters y.
        let pres = skew_plane();
        let cert = verify_normal(&pres, &element(&[(&[0, 0], 1)])).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![s(1), s(0)],
            vec![s(0), Scalar::ratio(1, 4)],
        ])
        .unwrap();
        assert_eq!(cert.nu1, expected);
        assert!(extend_automorphism(&pres, &cert.nu1).unwrap());
        assert!(regularity_window(&pres, &cert.element, 6).unwrap().pass());
    }

    #[test]
    fn conjugating_the_presentation_conjugates_the_map() {
        let pres = skew_plane();
        let w = element(&[(&[1, 1], 1)]);
        let base = verify_normal(&pres, &w).unwrap();

        // Change generators by x -> x, y -> x + y.
        let t = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(1)]]).unwrap();
        let kron = t.kron(&t);
        let moved_relations: Vec<FreeElement> = pres
            .relations()
            .iter()
            .map(|r| FreeElement::from_vector(2, 2, &kron.apply(&r.to_vector(2))))
            .collect();
        let moved_pres = two_gen(&moved_relations);
        let moved_w = FreeElement::from_vector(2, 2, &kron.apply(&w.to_vector(2)));

        let moved = verify_normal(&moved_pres, &moved_w).unwrap();
        let expected = t.mul(&base.nu1).mul(&t.inverse().unwrap());
        assert_eq!(moved.nu1, expected);
    }

    #[test]
    fn one_sided_zero_divisor_is_not_normal() {
        let pres = half_zero();
        let err = verify_normal(&pres, &element(&[(&[0, 1], 1)])).unwrap_err();
        match err {
            NormalityError::NotNormal { generator } => assert_eq!(generator, "x"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn normal_element_with_singular_map() {
        // In yx = 0 the square x^2 is normal, but nu kills y.
        let pres = half_zero();
        let cert = verify_normal(&pres, &element(&[(&[0, 0], 1)])).unwrap();
        let expected =
            Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), s(0)]]).unwrap();
        assert_eq!(cert.nu1, expected);
        assert!(!extend_automorphism(&pres, &cert.nu1).unwrap());

        let report = regularity_window(&pres, &cert.element, 5).unwrap();
        assert!(!report.pass());
        let d1 = &report.rows[1];
        assert_eq!((d1.dim, d1.left_rank, d1.right_rank), (2, 2, 1));
    }

    #[test]
    fn degenerate_multiplication_has_no_unique_map() {
        // The quadratic dual of k[x, y] vanishes in degree 3, so the
        // solve is underdetermined.
        let pres = poly2().quadratic_dual();
        let w = element(&[(&[0, 1], 1)]);
        assert!(matches!(
            verify_normal(&pres, &w),
            Err(NormalityError::NonUniqueNormalizer)
        ));
    }

    #[test]
    fn rejects_zero_and_wrong_degrees() {
        let pres = poly2();
        let zero = element(&[(&[0, 1], 1), (&[1, 0], -1)]);
        assert!(matches!(
            verify_normal(&pres, &zero),
            Err(NormalityError::ZeroElement)
        ));
        let linear = FreeElement::single(Word::new(vec![0]), s(1));
        assert!(matches!(
            verify_normal(&pres, &linear),
            Err(NormalityError::NotDegreeTwo { degree: 1 })
        ));
        assert!(matches!(
            regularity_window(&pres, &zero, 4),
            Err(NormalityError::ZeroElement)
        ));
    }

    #[test]
    fn forged_certificate_fails_the_window_sweep() {
        let pres = skew_plane();
        let cert = verify_normal(&pres, &element(&[(&[0, 0], 1)])).unwrap();
        let forged = NormalCertificate {
            element: cert.element.clone(),
            nu1: Matrix::identity(2),
            checked_degree: 2,
        };
        assert!(matches!(
            extend_checked_window(&pres, &forged, 5),
            Err(NormalityError::ExtensionMismatch { degree: 1 })
        ));
    }
}
