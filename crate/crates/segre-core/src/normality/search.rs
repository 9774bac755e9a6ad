//! Search for every normal element supported on a few degree-2 words.
//!
//! Writing `w = sum lambda_k m_k` over the support words turns normality
//! into rank conditions on matrices whose entries are linear in the
//! coefficients: for each generator `x_i` the bordered matrix
//! `[w x_1 .. w x_g | x_i w]` must not exceed rank `g`. The vanishing of
//! its maximal minors is a polynomial system in the `lambda_k`, solved
//! exactly chart by chart (first nonzero coefficient scaled to 1) with
//! resultants and rational root extraction. Every candidate is confirmed
//! through [`verify_normal`](super::verify_normal) before it is reported,
//! so spurious roots cost time but never correctness; branches the solver
//! cannot enumerate are reported instead of dropped.

use std::collections::BTreeSet;

use crate::algebra::{DegreeCache, FreeElement, QuadraticPresentation, Word};
use crate::linalg::{Matrix, Scalar, SolveOutcome, Subspace};
use crate::poly::{self, MultiPoly};

use super::certificate::{extend_checked_window, verify_with_cache};
use super::{NormalCertificate, NormalityError};

/// How many eliminable polynomials feed the pairwise resultant stage.
/// Using a subset can only enlarge the candidate set, which the final
/// verification filters, so the cap trades time for extra candidates,
/// never for missed solutions.
const MAX_ELIMINATION_POLYS: usize = 6;

/// A branch of the search that was detected but not enumerated.
///
/// `chart` lists the support coefficients pinned before the branch
/// stalled. An empty `polynomial` means every value of the remaining
/// variable passed the necessary conditions, a positive-dimensional
/// family; a nonconstant one holds candidate values that exist but are
/// not rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedBranch {
    pub chart: Vec<(usize, Scalar)>,
    pub polynomial: Vec<Scalar>,
    pub variable: usize,
}

/// Outcome of [`search_normal_degree2`].
///
/// `degenerate` means the necessary conditions vanish identically, so the
/// whole support span consists of normal elements (as in a commutative
/// algebra); `certificates` then holds verified samples rather than an
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub degenerate: bool,
    pub certificates: Vec<NormalCertificate>,
    pub unresolved: Vec<UnresolvedBranch>,
}

/// Finds the normal elements spanned by up to three degree-2 words, each
/// scaled so its first nonzero support coefficient is 1.
///
/// Certificates are checked up to `checked_degree` (at least 3). The
/// report is exhaustive exactly when `unresolved` is empty.
pub fn search_normal_degree2(
    pres: &QuadraticPresentation,
    support: &[Word],
    checked_degree: usize,
) -> Result<SearchReport, NormalityError> {
    let s = support.len();
    if s == 0 {
        return Err(NormalityError::EmptySupport);
    }
    if s > 3 {
        return Err(NormalityError::SupportTooLarge { size: s });
    }
    for word in support {
        if word.degree() != 2 {
            return Err(NormalityError::NotDegreeTwo {
                degree: word.degree(),
            });
        }
    }
    let cache = DegreeCache::build(pres, 3)?;
    let minors = necessary_conditions(&cache, support)?;

    if minors.is_empty() {
        let mut samples: BTreeSet<Vec<Scalar>> = BTreeSet::new();
        samples.insert(vec![Scalar::one(); s]);
        for k in 0..s {
            let mut unit = vec![Scalar::zero(); s];
            unit[k] = Scalar::one();
            samples.insert(unit);
        }
        let mut certificates = Vec::new();
        for lambda in &samples {
            collect_candidate(pres, &cache, support, lambda, checked_degree, &mut certificates)?;
        }
        return Ok(SearchReport {
            degenerate: true,
            certificates,
            unresolved: Vec::new(),
        });
    }

    let one = Scalar::one();
    let zero = Scalar::zero();
    let mut candidates: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    let mut unresolved: Vec<UnresolvedBranch> = Vec::new();
    match s {
        1 => {
            candidates.insert(vec![one.clone()]);
        }
        2 => {
            let pinned: Vec<MultiPoly> =
                minors.iter().map(|p| p.substitute(0, &one)).collect();
            for root in univariate_stage(&pinned, 1, &[(0, one.clone())], &mut unresolved) {
                candidates.insert(vec![one.clone(), root]);
            }
            candidates.insert(vec![zero.clone(), one.clone()]);
        }
        3 => {
            leading_chart_three(&minors, &mut candidates, &mut unresolved);
            let pinned: Vec<MultiPoly> = minors
                .iter()
                .map(|p| p.substitute(0, &zero).substitute(1, &one))
                .collect();
            let chart = [(0, zero.clone()), (1, one.clone())];
            for root in univariate_stage(&pinned, 2, &chart, &mut unresolved) {
                candidates.insert(vec![zero.clone(), one.clone(), root]);
            }
            candidates.insert(vec![zero.clone(), zero.clone(), one.clone()]);
        }
        _ => unreachable!("support size validated above"),
    }

    let mut certificates = Vec::new();
    for lambda in &candidates {
        collect_candidate(pres, &cache, support, lambda, checked_degree, &mut certificates)?;
    }
    Ok(SearchReport {
        degenerate: false,
        certificates,
        unresolved,
    })
}

/// The polynomial system cutting out the normal locus: per generator, the
/// maximal minors of the bordered multiplication matrix, compressed
/// through a constant basis of the involved coefficient vectors and
/// deduplicated up to scale.
fn necessary_conditions(
    cache: &DegreeCache,
    support: &[Word],
) -> Result<Vec<MultiPoly>, NormalityError> {
    let pres = cache.presentation();
    let g = pres.generator_count();
    let s = support.len();
    let h3 = cache.dim(3)?;

    let mut m_coords = Vec::with_capacity(s);
    for word in support {
        m_coords.push(cache.word_class(word)?);
    }
    let mut right_vecs = Vec::with_capacity(s);
    for mc in &m_coords {
        let mut per_gen = Vec::with_capacity(g);
        for j in 0..g {
            per_gen.push(cache.apply_letter(2, mc, j)?);
        }
        right_vecs.push(per_gen);
    }
    let mut left_vecs = Vec::with_capacity(g);
    for i in 0..g {
        let mut per_word = Vec::with_capacity(s);
        for word in support {
            per_word.push(cache.word_class(&Word::new(vec![i]).concat(word))?);
        }
        left_vecs.push(per_word);
    }

    let mut seen: BTreeSet<MultiPoly> = BTreeSet::new();
    for i in 0..g {
        let mut vectors: Vec<Vec<Scalar>> = Vec::with_capacity(s * (g + 1));
        for per_gen in &right_vecs {
            for v in per_gen {
                vectors.push(v.clone());
            }
        }
        for v in &left_vecs[i] {
            vectors.push(v.clone());
        }
        let span = Subspace::from_vectors(h3, &vectors)?;
        let r = span.dim();
        if r <= g {
            continue;
        }
        let basis_cols = span.basis().transpose();
        let stacked = Matrix::from_fn(h3, vectors.len(), |row, col| vectors[col][row].clone());
        let coords = match basis_cols.solve_exact(&stacked) {
            SolveOutcome::Unique(y) => y,
            _ => unreachable!("the vectors lie in their own span"),
        };
        let mut entries = Vec::with_capacity(r);
        for row in 0..r {
            let mut line = Vec::with_capacity(g + 1);
            for j in 0..g {
                let mut e = MultiPoly::zero(s);
                for k in 0..s {
                    e = e.add(&MultiPoly::var(s, k).scale(coords.get(row, k * g + j)));
                }
                line.push(e);
            }
            let mut e = MultiPoly::zero(s);
            for k in 0..s {
                e = e.add(&MultiPoly::var(s, k).scale(coords.get(row, s * g + k)));
            }
            line.push(e);
            entries.push(line);
        }
        for minor in poly::all_maximal_minors(&entries) {
            if !minor.is_zero() {
                seen.insert(minor.normalized());
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The chart of a three-word support with the first coefficient pinned
/// to 1: eliminate the third variable by resultants, extract the second,
/// then finish each branch as a univariate problem.
fn leading_chart_three(
    minors: &[MultiPoly],
    candidates: &mut BTreeSet<Vec<Scalar>>,
    unresolved: &mut Vec<UnresolvedBranch>,
) {
    let one = Scalar::one();
    let chart0 = vec![(0usize, one.clone())];
    let pinned: Vec<MultiPoly> = minors.iter().map(|p| p.substitute(0, &one)).collect();
    let live: Vec<&MultiPoly> = pinned.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        unresolved.push(UnresolvedBranch {
            chart: chart0,
            polynomial: Vec::new(),
            variable: 1,
        });
        return;
    }

    let mut only_second: Vec<Vec<Scalar>> = Vec::new();
    let mut with_third: Vec<&MultiPoly> = Vec::new();
    for &p in &live {
        let vars = p.vars_present();
        if vars.is_empty() {
            return; // a nonzero constant condition: nothing solves this chart
        } else if vars == [1] {
            only_second.push(p.to_univariate(1).expect("single remaining variable"));
        } else {
            with_third.push(p);
        }
    }

    let second_candidates = if !only_second.is_empty() {
        let mut acc = only_second[0].clone();
        for p in &only_second[1..] {
            acc = poly::uni_gcd(&acc, p);
            if poly::uni_degree(&acc).map_or(true, |d| d == 0) {
                return;
            }
        }
        extract_roots(acc, &chart0, 1, unresolved)
    } else if with_third.len() == 1 {
        // A single condition in two unknowns cuts out a curve.
        unresolved.push(UnresolvedBranch {
            chart: chart0,
            polynomial: Vec::new(),
            variable: 1,
        });
        return;
    } else {
        let mut sorted: Vec<&MultiPoly> = with_third.clone();
        sorted.sort_by_key(|p| (p.degree_in(2), (*p).clone()));
        sorted.truncate(MAX_ELIMINATION_POLYS);
        let mut elims: Vec<Vec<Scalar>> = Vec::new();
        for (a, p) in sorted.iter().enumerate() {
            for q in &sorted[a + 1..] {
                let res = poly::resultant(p, q, 2, 1);
                if poly::uni_degree(&res).is_some() {
                    elims.push(res);
                }
            }
        }
        if elims.is_empty() {
            unresolved.push(UnresolvedBranch {
                chart: chart0,
                polynomial: Vec::new(),
                variable: 1,
            });
            return;
        }
        let mut acc = elims[0].clone();
        for p in &elims[1..] {
            acc = poly::uni_gcd(&acc, p);
            if poly::uni_degree(&acc).map_or(true, |d| d == 0) {
                return;
            }
        }
        extract_roots(acc, &chart0, 1, unresolved)
    };

    for a in &second_candidates {
        let specialized: Vec<MultiPoly> = pinned.iter().map(|p| p.substitute(1, a)).collect();
        let chart = [(0, one.clone()), (1, a.clone())];
        for b in univariate_stage(&specialized, 2, &chart, unresolved) {
            candidates.insert(vec![one.clone(), a.clone(), b]);
        }
    }
}

/// Common rational roots of conditions that involve a single remaining
/// variable; degenerate charts and irrational root sets become recorded
/// branches.
fn univariate_stage(
    minors: &[MultiPoly],
    var: usize,
    chart: &[(usize, Scalar)],
    unresolved: &mut Vec<UnresolvedBranch>,
) -> Vec<Scalar> {
    let mut polys: Vec<Vec<Scalar>> = Vec::new();
    for m in minors {
        if m.is_zero() {
            continue;
        }
        let uni = m
            .to_univariate(var)
            .expect("chart substitution leaves one variable");
        match poly::uni_degree(&uni) {
            None => continue,
            Some(0) => return Vec::new(),
            Some(_) => polys.push(uni),
        }
    }
    if polys.is_empty() {
        unresolved.push(UnresolvedBranch {
            chart: chart.to_vec(),
            polynomial: Vec::new(),
            variable: var,
        });
        return Vec::new();
    }
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = poly::uni_gcd(&acc, p);
        if poly::uni_degree(&acc).map_or(true, |d| d == 0) {
            return Vec::new();
        }
    }
    extract_roots(acc, chart, var, unresolved)
}

/// Rational roots of an accumulated condition, with any unfactored part
/// recorded as a branch.
fn extract_roots(
    acc: Vec<Scalar>,
    chart: &[(usize, Scalar)],
    var: usize,
    unresolved: &mut Vec<UnresolvedBranch>,
) -> Vec<Scalar> {
    if poly::uni_degree(&acc).map_or(true, |d| d == 0) {
        return Vec::new();
    }
    let (roots, leftover) = poly::rational_roots(&acc);
    if poly::uni_degree(&leftover).is_some_and(|d| d >= 1) {
        unresolved.push(UnresolvedBranch {
            chart: chart.to_vec(),
            polynomial: leftover,
            variable: var,
        });
    }
    roots
}

fn candidate_element(support: &[Word], lambda: &[Scalar]) -> FreeElement {
    let mut w = FreeElement::zero(2);
    for (word, c) in support.iter().zip(lambda) {
        if !c.is_zero() {
            w = w.add(&FreeElement::single(word.clone(), c.clone()));
        }
    }
    w
}

/// Verifies one coefficient vector, keeping the certificate when the
/// element really is normal and quietly dropping candidates that fail.
fn collect_candidate(
    pres: &QuadraticPresentation,
    cache: &DegreeCache,
    support: &[Word],
    lambda: &[Scalar],
    checked_degree: usize,
    out: &mut Vec<NormalCertificate>,
) -> Result<(), NormalityError> {
    let w = candidate_element(support, lambda);
    if w.is_zero() {
        return Ok(());
    }
    match verify_with_cache(cache, &w) {
        Ok(cert) => {
            let cert = if checked_degree > cert.checked_degree {
                extend_checked_window(pres, &cert, checked_degree)?
            } else {
                cert
            };
            out.push(cert);
            Ok(())
        }
        Err(NormalityError::NotNormal { .. })
        | Err(NormalityError::NonUniqueNormalizer)
        | Err(NormalityError::ZeroElement) => Ok(()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorSet;
    use crate::linalg::Matrix;

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

    fn words(support: &[&[usize]]) -> Vec<Word> {
        support.iter().map(|w| Word::new(w.to_vec())).collect()
    }

    #[test]
    fn squares_in_the_skew_plane() {
        // xy = 2yx; only the pure squares in the span of xx and yy are
        // normal.
        let pres = two_gen(&[element(&[(&[0, 1], 1), (&[1, 0], -2)])]);
        let report =
            search_normal_degree2(&pres, &words(&[&[0, 0], &[1, 1]]), 5).unwrap();
        assert!(!report.degenerate);
        assert!(report.unresolved.is_empty());
        let found: Vec<FreeElement> = report
            .certificates
            .iter()
            .map(|c| c.element.clone())
            .collect();
        assert_eq!(found, vec![element(&[(&[1, 1], 1)]), element(&[(&[0, 0], 1)])]);
        for cert in &report.certificates {
            assert_eq!(cert.checked_degree, 5);
        }
        let nu_yy = Matrix::from_rows(vec![vec![s(4), s(0)], vec![s(0), s(1)]]).unwrap();
        assert_eq!(report.certificates[0].nu1, nu_yy);
    }

    #[test]
    fn commutative_support_is_degenerate() {
        let pres = QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["x", "y"]));
        let report =
            search_normal_degree2(&pres, &words(&[&[0, 0], &[0, 1]]), 3).unwrap();
        assert!(report.degenerate);
        assert!(report.unresolved.is_empty());
        let found: Vec<FreeElement> = report
            .certificates
            .iter()
            .map(|c| c.element.clone())
            .collect();
        assert_eq!(
            found,
            vec![
                element(&[(&[0, 1], 1)]),
                element(&[(&[0, 0], 1)]),
                element(&[(&[0, 0], 1), (&[0, 1], 1)]),
            ]
        );
        for cert in &report.certificates {
            assert_eq!(cert.nu1, Matrix::identity(2));
        }
    }

    #[test]
    fn jordan_relation_rules_out_the_second_square() {
        // xy = yx + xx; xx is normal, yy is not.
        let pres = two_gen(&[element(&[(&[0, 1], 1), (&[1, 0], -1), (&[0, 0], -1)])]);
        let report =
            search_normal_degree2(&pres, &words(&[&[0, 0], &[1, 1]]), 3).unwrap();
        assert!(!report.degenerate);
        assert!(report.unresolved.is_empty());
        assert_eq!(report.certificates.len(), 1);
        assert_eq!(report.certificates[0].element, element(&[(&[0, 0], 1)]));
    }

    #[test]
    fn empty_result_is_not_degenerate() {
        // xy = yx + yy admits no normal element on the span of xx and xy.
        let pres = two_gen(&[element(&[(&[0, 1], 1), (&[1, 0], -1), (&[1, 1], -1)])]);
        let report =
            search_normal_degree2(&pres, &words(&[&[0, 0], &[0, 1]]), 3).unwrap();
        assert!(!report.degenerate);
        assert!(report.certificates.is_empty());
        assert!(report.unresolved.is_empty());
    }

    #[test]
    fn irrational_branch_is_reported_not_dropped() {
        // xy = 2yx + 2xx + yy on the span of xy, yx, yy: one rational
        // certificate survives and one elimination quadratic has no
        // rational roots, which the report must disclose.
        let pres = two_gen(&[element(&[
            (&[0, 1], 1),
            (&[1, 0], -2),
            (&[0, 0], -2),
            (&[1, 1], -1),
        ])]);
        let report =
            search_normal_degree2(&pres, &words(&[&[0, 1], &[1, 0], &[1, 1]]), 3).unwrap();
        assert!(!report.degenerate);
        assert_eq!(report.certificates.len(), 1);
        assert_eq!(
            report.certificates[0].element,
            element(&[(&[0, 1], 1), (&[1, 0], -1)])
        );
        assert_eq!(report.unresolved.len(), 1);
        let branch = &report.unresolved[0];
        assert_eq!(branch.chart, vec![(0, s(1))]);
        assert_eq!(branch.variable, 1);
        assert_eq!(branch.polynomial, vec![s(1), Scalar::ratio(1, 4), s(1)]);
    }

    #[test]
    fn degenerate_search_can_come_back_empty_handed() {
        // The dual of k[x, y] vanishes in degree 3: every element is
        // trivially normal but no certificate can be minted.
        let pres = QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["x", "y"]))
            .quadratic_dual();
        let report = search_normal_degree2(&pres, &words(&[&[0, 1]]), 3).unwrap();
        assert!(report.degenerate);
        assert!(report.certificates.is_empty());
        assert!(report.unresolved.is_empty());
    }

    #[test]
    fn support_validation() {
        let pres = QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["x", "y"]));
        assert!(matches!(
            search_normal_degree2(&pres, &[], 3),
            Err(NormalityError::EmptySupport)
        ));
        let four = words(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert!(matches!(
            search_normal_degree2(&pres, &four, 3),
            Err(NormalityError::SupportTooLarge { size: 4 })
        ));
        let linear = vec![Word::new(vec![0])];
        assert!(matches!(
            search_normal_degree2(&pres, &linear, 3),
            Err(NormalityError::NotDegreeTwo { degree: 1 })
        ));
    }
}
