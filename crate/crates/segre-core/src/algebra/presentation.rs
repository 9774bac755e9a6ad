//! Immutable quadratic presentations and presentation-level operations.

use super::{AlgebraError, DegreeCache, FreeElement, GeneratorSet, Word};
use crate::linalg::{Matrix, Scalar, Subspace};

/// A quadratic algebra presented as the tensor algebra on a generator set
/// modulo the two-sided ideal of a subspace of degree-2 elements.
///
/// The relation subspace is stored in canonical form; the originally
/// supplied spanning relations are not kept, so two presentations with the
/// same span are indistinguishable.
#[derive(Debug, Clone)]
pub struct QuadraticPresentation {
    gens: GeneratorSet,
    relation_subspace: Subspace,
}

impl QuadraticPresentation {
    pub fn new(
        gens: GeneratorSet,
        relations: &[FreeElement],
    ) -> Result<Self, AlgebraError> {
        let g = gens.len();
        let mut vectors = Vec::with_capacity(relations.len());
        for (index, rel) in relations.iter().enumerate() {
            if rel.degree() != 2 {
                return Err(AlgebraError::NotQuadratic {
                    index,
                    degree: rel.degree(),
                });
            }
            if let Some(max) = rel.max_letter() {
                if max >= g {
                    return Err(AlgebraError::GeneratorIndex {
                        index: max,
                        count: g,
                    });
                }
            }
            if !rel.is_zero() {
                vectors.push(rel.to_vector(g));
            }
        }
        let relation_subspace = Subspace::from_vectors(g * g, &vectors)?;
        Ok(QuadraticPresentation {
            gens,
            relation_subspace,
        })
    }

    /// The free algebra on `gens`: no relations at all.
    pub fn free(gens: GeneratorSet) -> Self {
        let g = gens.len();
        QuadraticPresentation {
            gens,
            relation_subspace: Subspace::zero(g * g),
        }
    }

    /// Commutative polynomials on `gens`.
    pub fn polynomial(gens: GeneratorSet) -> Self {
        let g = gens.len();
        let mut relations = Vec::new();
        for i in 0..g {
            for j in (i + 1)..g {
                relations.push(
                    FreeElement::single(Word::new(vec![i, j]), Scalar::one()).add(
                        &FreeElement::single(Word::new(vec![j, i]), -Scalar::one()),
                    ),
                );
            }
        }
        QuadraticPresentation::new(gens, &relations).expect("commutators are quadratic")
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn relation_subspace(&self) -> &Subspace {
        &self.relation_subspace
    }

    pub fn relation_dim(&self) -> usize {
        self.relation_subspace.dim()
    }

    /// Canonical basis of the relation subspace as free elements.
    pub fn relations(&self) -> Vec<FreeElement> {
        let g = self.gens.len();
        self.relation_subspace
            .basis()
            .row_vectors()
            .into_iter()
            .map(|row| FreeElement::from_vector(2, g, &row))
            .collect()
    }

    /// The degree-`d` slice of the two-sided ideal generated by the
    /// relations, as a subspace of the full word space. The ambient
    /// dimension grows like (number of generators)^d, so this is meant for
    /// small degrees; Hilbert counts should go through [`DegreeCache`].
    pub fn relation_space(&self, d: usize) -> Result<Subspace, AlgebraError> {
        if d < 2 {
            return Err(AlgebraError::DegreeTooSmall(d));
        }
        let g = self.gens.len();
        let ambient = g.pow(d as u32);
        let basis = self.relation_subspace.basis();
        let mut vectors = Vec::new();
        for position in 0..=(d - 2) {
            let left_count = g.pow(position as u32);
            let right_count = g.pow((d - 2 - position) as u32);
            for r in 0..basis.rows() {
                for left in 0..left_count {
                    for right in 0..right_count {
                        let mut v = vec![Scalar::zero(); ambient];
                        for mid in 0..(g * g) {
                            let c = basis.get(r, mid);
                            if c.is_zero() {
                                continue;
                            }
                            let idx = (left * g * g + mid) * right_count + right;
                            v[idx] = c.clone();
                        }
                        vectors.push(v);
                    }
                }
            }
        }
        Ok(Subspace::from_vectors(ambient, &vectors)?)
    }

    /// Dimension of the degree-`d` component of the quotient algebra.
    pub fn hilbert(&self, d: usize) -> Result<usize, AlgebraError> {
        let cache = DegreeCache::build(self, d)?;
        cache.dim(d)
    }

    /// Dimensions of all components through degree `max_degree`.
    pub fn hilbert_series(&self, max_degree: usize) -> Result<Vec<usize>, AlgebraError> {
        let cache = DegreeCache::build(self, max_degree)?;
        (0..=max_degree).map(|d| cache.dim(d)).collect()
    }

    /// Extends the relation subspace by one more quadratic element. The
    /// returned flag is false when the element was already in the span, in
    /// which case the presentation is returned unchanged.
    pub fn add_relation(
        &self,
        w: &FreeElement,
    ) -> Result<(QuadraticPresentation, bool), AlgebraError> {
        if w.degree() != 2 {
            return Err(AlgebraError::NotQuadratic {
                index: 0,
                degree: w.degree(),
            });
        }
        let g = self.gens.len();
        if let Some(max) = w.max_letter() {
            if max >= g {
                return Err(AlgebraError::GeneratorIndex {
                    index: max,
                    count: g,
                });
            }
        }
        let v = w.to_vector(g);
        if self.relation_subspace.contains(&v)? {
            return Ok((self.clone(), false));
        }
        let extra = Subspace::from_vectors(g * g, &[v])?;
        let relation_subspace = self.relation_subspace.sum(&extra)?;
        Ok((
            QuadraticPresentation {
                gens: self.gens.clone(),
                relation_subspace,
            },
            true,
        ))
    }

    /// Compares relation subspaces after renaming generators of `self` by
    /// the supplied bijection (`identification[i]` is the index in `other`
    /// corresponding to generator `i` of `self`).
    pub fn presentations_equal(
        &self,
        other: &QuadraticPresentation,
        identification: &[usize],
    ) -> Result<bool, AlgebraError> {
        let g = self.gens.len();
        if other.gens.len() != g {
            return Err(AlgebraError::GeneratorCountMismatch {
                left: g,
                right: other.gens.len(),
            });
        }
        if identification.len() != g {
            return Err(AlgebraError::NotABijection);
        }
        let mut seen = vec![false; g];
        for &t in identification {
            if t >= g || seen[t] {
                return Err(AlgebraError::NotABijection);
            }
            seen[t] = true;
        }
        let basis = self.relation_subspace.basis();
        let mut mapped = Vec::with_capacity(basis.rows());
        for r in 0..basis.rows() {
            let mut v = vec![Scalar::zero(); g * g];
            for l1 in 0..g {
                for l2 in 0..g {
                    let c = basis.get(r, l1 * g + l2);
                    if !c.is_zero() {
                        v[identification[l1] * g + identification[l2]] = c.clone();
                    }
                }
            }
            mapped.push(v);
        }
        let mapped_space = Subspace::from_vectors(g * g, &mapped)?;
        Ok(mapped_space.equal(&other.relation_subspace)?)
    }

    /// The quadratic dual: starred generators with the orthogonal
    /// complement of the relation subspace, taken entrywise in the same
    /// lexicographic word coordinates (the dual basis pairing).
    pub fn quadratic_dual(&self) -> QuadraticPresentation {
        QuadraticPresentation {
            gens: self.gens.starred(),
            relation_subspace: self.relation_subspace.annihilator(),
        }
    }

    /// Verifies the alternating-sum identity between the Hilbert functions
    /// of the algebra and its quadratic dual through degree `n`: the
    /// convolution with signs must be 1 at degree 0 and vanish afterwards.
    /// This is a necessary numerical condition for the two series to be
    /// inverse to each other.
    pub fn koszul_series_check(&self, n: usize) -> Result<bool, AlgebraError> {
        let own = self.hilbert_series(n)?;
        let dual = self.quadratic_dual().hilbert_series(n)?;
        for m in 0..=n {
            let mut acc: i128 = 0;
            for j in 0..=m {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * (own[m - j] as i128) * (dual[j] as i128);
            }
            let expected = if m == 0 { 1 } else { 0 };
            if acc != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The transformed relation subspace of a presentation under an invertible
/// change of generators: each degree-2 basis relation is pushed through
/// `map ⊗ map`, where `map` sends old generator coordinates to new ones.
pub(crate) fn transform_relations(
    pres: &QuadraticPresentation,
    map: &Matrix,
) -> Result<Subspace, AlgebraError> {
    let g = pres.generator_count();
    assert!(map.rows() == g && map.cols() == g, "change of basis must be square of matching size");
    let kron = map.kron(map);
    let basis = pres.relation_subspace().basis();
    let mut vectors = Vec::with_capacity(basis.rows());
    for r in 0..basis.rows() {
        vectors.push(kron.apply(basis.row(r)));
    }
    Ok(Subspace::from_vectors(g * g, &vectors)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn poly2() -> QuadraticPresentation {
        QuadraticPresentation::polynomial(GeneratorSet::from_labels(&["x", "y"]))
    }

    #[test]
    fn polynomial_relation_space_dims() {
        let p = poly2();
        assert_eq!(p.relation_dim(), 1);
        assert_eq!(p.relation_space(2).unwrap().dim(), 1);
        // Degree 3: 8 words, 4 survive in the commutative quotient.
        assert_eq!(p.relation_space(3).unwrap().dim(), 4);
        assert!(matches!(
            p.relation_space(1),
            Err(AlgebraError::DegreeTooSmall(1))
        ));
    }

    #[test]
    fn free_algebra_has_zero_relation_space() {
        let f = QuadraticPresentation::free(GeneratorSet::from_labels(&["x", "y"]));
        assert_eq!(f.relation_space(3).unwrap().dim(), 0);
        assert_eq!(f.hilbert(3).unwrap(), 8);
    }

    #[test]
    fn polynomial_hilbert() {
        let p = poly2();
        assert_eq!(p.hilbert_series(4).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn dual_of_polynomials_is_exterior() {
        let p = poly2();
        let dual = p.quadratic_dual();
        assert_eq!(dual.gens().label(0), "x*");
        assert_eq!(dual.relation_dim(), 3);
        // x*⊗x*, y*⊗y*, and x*⊗y* + y*⊗x* all annihilate xy − yx.
        let xx = FreeElement::single(Word::new(vec![0, 0]), s(1));
        let symm = FreeElement::from_terms(
            2,
            vec![(Word::new(vec![0, 1]), s(1)), (Word::new(vec![1, 0]), s(1))],
        )
        .unwrap();
        assert!(dual
            .relation_subspace()
            .contains(&xx.to_vector(2))
            .unwrap());
        assert!(dual
            .relation_subspace()
            .contains(&symm.to_vector(2))
            .unwrap());
        assert_eq!(dual.hilbert_series(3).unwrap(), vec![1, 2, 1, 0]);
        // Involution on relation subspaces.
        let back = dual.quadratic_dual();
        assert!(back
            .relation_subspace()
            .equal(p.relation_subspace())
            .unwrap());
    }

    #[test]
    fn add_relation_reports_degenerate_additions() {
        let free = QuadraticPresentation::free(GeneratorSet::from_labels(&["x", "y"]));
        let comm = FreeElement::from_terms(
            2,
            vec![(Word::new(vec![0, 1]), s(1)), (Word::new(vec![1, 0]), s(-1))],
        )
        .unwrap();
        let (p, grew) = free.add_relation(&comm).unwrap();
        assert!(grew);
        assert!(p.relation_subspace().equal(poly2().relation_subspace()).unwrap());
        let (_, grew_again) = p.add_relation(&comm.scale(&s(7))).unwrap();
        assert!(!grew_again);
    }

    #[test]
    fn presentations_equal_under_swap() {
        let gens = GeneratorSet::from_labels(&["x", "y"]);
        // yx − qxy for q = 2 versus xy − 2yx: equal after swapping x and y.
        let r1 = FreeElement::from_terms(
            2,
            vec![(Word::new(vec![0, 1]), s(1)), (Word::new(vec![1, 0]), s(-2))],
        )
        .unwrap();
        let r2 = FreeElement::from_terms(
            2,
            vec![(Word::new(vec![1, 0]), s(1)), (Word::new(vec![0, 1]), s(-2))],
        )
        .unwrap();
        let p1 = QuadraticPresentation::new(gens.clone(), &[r1]).unwrap();
        let p2 = QuadraticPresentation::new(gens, &[r2]).unwrap();
        assert!(!p1.presentations_equal(&p2, &[0, 1]).unwrap());
        assert!(p1.presentations_equal(&p2, &[1, 0]).unwrap());
        assert!(matches!(
            p1.presentations_equal(&p2, &[0, 0]),
            Err(AlgebraError::NotABijection)
        ));
    }

    #[test]
    fn koszul_series_check_on_small_algebras() {
        assert!(poly2().koszul_series_check(6).unwrap());
        let free = QuadraticPresentation::free(GeneratorSet::from_labels(&["x", "y"]));
        assert!(free.koszul_series_check(6).unwrap());
        // Truncated algebra (all quadratic words are relations) against the
        // free dual: series 1 + 2t versus 1/(1 − 2t).
        let gens = GeneratorSet::from_labels(&["x", "y"]);
        let mut all = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                all.push(FreeElement::single(Word::new(vec![i, j]), s(1)));
            }
        }
        let truncated = QuadraticPresentation::new(gens, &all).unwrap();
        assert_eq!(truncated.hilbert_series(3).unwrap(), vec![1, 2, 0, 0]);
        assert!(truncated.koszul_series_check(6).unwrap());
    }
}
