//! Degreewise bases and normal forms for a quadratic presentation.
//!
//! The cache is built incrementally. Degree d is presented on the candidate
//! basis (normal word of degree d−1) ⊗ (generator); the relations landing in
//! that candidate space are spanned by (normal word of degree d−2) ⊗
//! (quadratic relation), pushed forward through the previous step map.
//! Eliminating those rows with pivots chosen from the lexicographically
//! latest candidates leaves the earliest candidates as the degree-d basis,
//! so the chosen normal words are prefix-closed and deterministic.

use super::{AlgebraError, FreeElement, QuadraticPresentation, Word};
use crate::linalg::{Matrix, Scalar};

/// Per-degree data: the surviving normal words and the reduction of the
/// candidate basis onto them.
#[derive(Debug, Clone)]
struct Level {
    /// Normal words of this degree in lexicographic order.
    normal_words: Vec<Word>,
    /// Maps candidate coordinates (normal word of the previous degree
    /// appended by a letter, index `j·g + l`) to normal coordinates here.
    step: Matrix,
}

/// Read-only degreewise basis data for one presentation, up to a fixed
/// truncation degree.
#[derive(Debug, Clone)]
pub struct DegreeCache {
    pres: QuadraticPresentation,
    levels: Vec<Level>,
}

impl DegreeCache {
    /// Builds bases for all degrees up to and including `max_degree`.
    pub fn build(
        pres: &QuadraticPresentation,
        max_degree: usize,
    ) -> Result<Self, AlgebraError> {
        let g = pres.generator_count();
        let mut levels = Vec::with_capacity(max_degree + 1);
        levels.push(Level {
            normal_words: vec![Word::empty()],
            step: Matrix::identity(1),
        });
        if max_degree >= 1 {
            levels.push(Level {
                normal_words: (0..g).map(|l| Word::new(vec![l])).collect(),
                step: Matrix::identity(g),
            });
        }
        let relation_basis = pres.relation_subspace().basis();
        for d in 2..=max_degree {
            let prev: &Level = &levels[d - 1];
            let prev2: &Level = &levels[d - 2];
            let candidates = prev.normal_words.len() * g;
            // Relation rows inside the candidate space: for each normal word
            // u of degree d−2 and each basis relation Σ c_{l1,l2} x_{l1}x_{l2},
            // expand u·x_{l1} through the previous step map and append x_{l2}.
            let mut rows = Vec::new();
            for u_idx in 0..prev2.normal_words.len() {
                for r in 0..relation_basis.rows() {
                    let mut row = vec![Scalar::zero(); candidates];
                    for l1 in 0..g {
                        for l2 in 0..g {
                            let c = relation_basis.get(r, l1 * g + l2);
                            if c.is_zero() {
                                continue;
                            }
                            let col = u_idx * g + l1;
                            for j in 0..prev.normal_words.len() {
                                let coeff = prev.step.get(j, col);
                                if !coeff.is_zero() {
                                    row[j * g + l2] += c * coeff;
                                }
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let level = if rows.is_empty() {
                let normal_words = append_all(&prev.normal_words, g);
                Level {
                    normal_words,
                    step: Matrix::identity(candidates),
                }
            } else {
                let relation_rows = Matrix::from_rows(rows)?;
                // Pivot from the lexicographically last candidate backwards so
                // the free (normal) candidates are the earliest words.
                let order: Vec<usize> = (0..candidates).rev().collect();
                let outcome = relation_rows.rref_in_column_order(&order);
                let mut is_pivot = vec![false; candidates];
                for &p in &outcome.pivots {
                    is_pivot[p] = true;
                }
                let free: Vec<usize> =
                    (0..candidates).filter(|&c| !is_pivot[c]).collect();
                let mut normal_index = vec![usize::MAX; candidates];
                for (n, &c) in free.iter().enumerate() {
                    normal_index[c] = n;
                }
                let mut step = Matrix::zeros(free.len(), candidates);
                for (n, &c) in free.iter().enumerate() {
                    step.set(n, c, Scalar::one());
                }
                for (row, &p) in outcome.pivots.iter().enumerate() {
                    // The pivot candidate equals minus the free tail of its
                    // eliminated row.
                    for c in 0..candidates {
                        if c == p {
                            continue;
                        }
                        let v = outcome.reduced.get(row, c);
                        if !v.is_zero() {
                            debug_assert!(normal_index[c] != usize::MAX);
                            step.set(normal_index[c], p, -v.clone());
                        }
                    }
                }
                let normal_words = free
                    .iter()
                    .map(|&c| prev.normal_words[c / g].append(c % g))
                    .collect();
                Level { normal_words, step }
            };
            levels.push(level);
        }
        Ok(DegreeCache {
            pres: pres.clone(),
            levels,
        })
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.pres
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, d: usize) -> Result<&Level, AlgebraError> {
        self.levels.get(d).ok_or(AlgebraError::DegreeNotCached {
            degree: d,
            max_degree: self.max_degree(),
        })
    }

    /// Dimension of the degree-`d` component.
    pub fn dim(&self, d: usize) -> Result<usize, AlgebraError> {
        Ok(self.level(d)?.normal_words.len())
    }

    /// The chosen basis words of degree `d`, lexicographically ordered.
    pub fn normal_words(&self, d: usize) -> Result<&[Word], AlgebraError> {
        Ok(&self.level(d)?.normal_words)
    }

    /// Right-multiplies a degree-`d` coordinate vector by a generator.
    pub fn apply_letter(
        &self,
        d: usize,
        coords: &[Scalar],
        letter: usize,
    ) -> Result<Vec<Scalar>, AlgebraError> {
        let g = self.pres.generator_count();
        if letter >= g {
            return Err(AlgebraError::GeneratorIndex {
                index: letter,
                count: g,
            });
        }
        let here = self.level(d)?;
        if coords.len() != here.normal_words.len() {
            return Err(AlgebraError::DegreeMismatch {
                expected: here.normal_words.len(),
                got: coords.len(),
            });
        }
        let next = self.level(d + 1)?;
        let mut out = vec![Scalar::zero(); next.normal_words.len()];
        for (j, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let col = j * g + letter;
            for (slot, o) in out.iter_mut().enumerate() {
                let m = next.step.get(slot, col);
                if !m.is_zero() {
                    *o += m * x;
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of a word's class over the normal words of its degree.
    pub fn word_class(&self, word: &Word) -> Result<Vec<Scalar>, AlgebraError> {
        let mut coords = vec![Scalar::one()];
        for (i, &l) in word.letters().iter().enumerate() {
            coords = self.apply_letter(i, &coords, l)?;
        }
        Ok(coords)
    }

    /// Reduces a homogeneous element to coordinates over the normal words
    /// of its degree; the zero vector means the element lies in the ideal.
    pub fn normal_form(&self, x: &FreeElement) -> Result<Vec<Scalar>, AlgebraError> {
        let d = x.degree();
        let mut out = vec![Scalar::zero(); self.dim(d)?];
        for (w, c) in x.terms() {
            let coords = self.word_class(w)?;
            for (slot, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    out[slot] += v * c;
                }
            }
        }
        Ok(out)
    }

    /// Rebuilds a free-algebra representative (supported on normal words)
    /// from degree-`d` coordinates.
    pub fn class_to_element(
        &self,
        d: usize,
        coords: &[Scalar],
    ) -> Result<FreeElement, AlgebraError> {
        let words = self.normal_words(d)?;
        if coords.len() != words.len() {
            return Err(AlgebraError::DegreeMismatch {
                expected: words.len(),
                got: coords.len(),
            });
        }
        FreeElement::from_terms(
            d,
            words
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Multiplies two homogeneous elements in the quotient algebra and
    /// returns the product in normal form.
    pub fn multiply(
        &self,
        x: &FreeElement,
        y: &FreeElement,
    ) -> Result<FreeElement, AlgebraError> {
        let total = x.degree() + y.degree();
        if total > self.max_degree() {
            return Err(AlgebraError::DegreeOverflow {
                degree: total,
                max_degree: self.max_degree(),
            });
        }
        let base = self.normal_form(x)?;
        let mut out = vec![Scalar::zero(); self.dim(total)?];
        for (w, c) in y.terms() {
            let mut coords = base.clone();
            let mut d = x.degree();
            for &l in w.letters() {
                coords = self.apply_letter(d, &coords, l)?;
                d += 1;
            }
            for (slot, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    out[slot] += v * c;
                }
            }
        }
        self.class_to_element(total, &out)
    }
}

fn append_all(words: &[Word], g: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(words.len() * g);
    for w in words {
        for l in 0..g {
            out.push(w.append(l));
        }
    }
    out
}
