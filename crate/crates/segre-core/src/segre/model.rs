//! The componentwise model of a twisted Segre product, and its comparison
//! with the presentation route.

use std::collections::HashMap;

use crate::algebra::{AlgebraError, DegreeCache, FreeElement, QuadraticPresentation, Word};
use crate::linalg::{Matrix, Scalar};
use crate::twist::{validate_descent, TwistData};

use super::{segre_presentation, SegreError};

/// The twisted Segre product realized degree by degree as A_d ⊗ B_d, with
/// multiplication routed through the seed extensions.
///
/// Degree-`d` elements are coordinate vectors over pairs of side normal
/// words, A word outermost: the pair (a_idx, b_idx) sits at
/// `a_idx * dim(B_d) + b_idx`.
#[derive(Debug)]
pub struct SegreComponentModel {
    twist: TwistData,
    cache_a: DegreeCache,
    cache_b: DegreeCache,
}

impl SegreComponentModel {
    /// Builds side caches up to `max_degree`; the seed must descend to both
    /// quotients for the product to be well defined.
    pub fn build(twist: &TwistData, max_degree: usize) -> Result<Self, SegreError> {
        let report = validate_descent(twist, 3)?;
        if !report.pass() {
            return Err(SegreError::InvalidTwist {
                b_side_holds: report.b_side_holds,
                a_side_holds: report.a_side_holds,
            });
        }
        Ok(SegreComponentModel {
            twist: twist.clone(),
            cache_a: DegreeCache::build(twist.pres_a(), max_degree)?,
            cache_b: DegreeCache::build(twist.pres_b(), max_degree)?,
        })
    }

    pub fn twist(&self) -> &TwistData {
        &self.twist
    }

    pub fn max_degree(&self) -> usize {
        self.cache_a.max_degree()
    }

    pub fn dim(&self, d: usize) -> Result<usize, SegreError> {
        Ok(self.cache_a.dim(d)? * self.cache_b.dim(d)?)
    }

    /// The basis of degree `d`: pairs of side normal words, A outermost.
    pub fn basis_pairs(&self, d: usize) -> Result<Vec<(Word, Word)>, SegreError> {
        let mut out = Vec::new();
        for wa in self.cache_a.normal_words(d)? {
            for wb in self.cache_b.normal_words(d)? {
                out.push((wa.clone(), wb.clone()));
            }
        }
        Ok(out)
    }

    /// Coordinates of the degree-1 generator v_i ⊗ u_j.
    pub fn generator(&self, i: usize, j: usize) -> Result<Vec<Scalar>, SegreError> {
        let n = self.twist.seed().dim_v();
        let m = self.twist.seed().dim_u();
        if i >= n {
            return Err(SegreError::Algebra(AlgebraError::GeneratorIndex {
                index: i,
                count: n,
            }));
        }
        if j >= m {
            return Err(SegreError::Algebra(AlgebraError::GeneratorIndex {
                index: j,
                count: m,
            }));
        }
        let mut v = vec![Scalar::zero(); self.dim(1)?];
        v[i * m + j] = Scalar::one();
        Ok(v)
    }

    /// Coordinates of fa ⊗ fb, both sides reduced to normal form first.
    pub fn pure_tensor(
        &self,
        fa: &FreeElement,
        fb: &FreeElement,
    ) -> Result<Vec<Scalar>, SegreError> {
        if fa.degree() != fb.degree() {
            return Err(SegreError::Algebra(AlgebraError::DegreeMismatch {
                expected: fa.degree(),
                got: fb.degree(),
            }));
        }
        let na = self.cache_a.normal_form(fa)?;
        let nb = self.cache_b.normal_form(fb)?;
        let mut out = vec![Scalar::zero(); na.len() * nb.len()];
        for (ai, av) in na.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            for (bi, bv) in nb.iter().enumerate() {
                if !bv.is_zero() {
                    out[ai * nb.len() + bi] = av * bv;
                }
            }
        }
        Ok(out)
    }

    /// Multiplies a degree-`p` element by a degree-`q` element, landing in
    /// degree p+q.
    pub fn multiply(
        &self,
        p: usize,
        x: &[Scalar],
        q: usize,
        y: &[Scalar],
    ) -> Result<Vec<Scalar>, SegreError> {
        let dim_p = self.dim(p)?;
        let dim_q = self.dim(q)?;
        if x.len() != dim_p {
            return Err(SegreError::Algebra(AlgebraError::DegreeMismatch {
                expected: dim_p,
                got: x.len(),
            }));
        }
        if y.len() != dim_q {
            return Err(SegreError::Algebra(AlgebraError::DegreeMismatch {
                expected: dim_q,
                got: y.len(),
            }));
        }
        if p + q > self.max_degree() {
            return Err(SegreError::Algebra(AlgebraError::DegreeOverflow {
                degree: p + q,
                max_degree: self.max_degree(),
            }));
        }
        pair_multiply(
            &self.cache_a,
            &self.cache_b,
            self.twist.seed(),
            (p, p),
            x,
            (q, q),
            y,
        )
    }
}

/// Multiplies a coordinate vector over A_{a1}⊗B_{b1} by one over
/// A_{a2}⊗B_{b2}, landing in A_{a1+a2}⊗B_{b1+b2}. Coordinates pair side
/// normal words with the A word outermost.
///
/// For basis pairs (a⊗b)(c⊗d) the seed extension interleaves b across c,
/// and each resulting pair of free side words is reduced through the side
/// caches: the product is Σ (a·c')⊗(b'·d) over the interleaving terms.
pub(crate) fn pair_multiply(
    cache_a: &DegreeCache,
    cache_b: &DegreeCache,
    seed: &crate::twist::TwistingSeed,
    (a1, b1): (usize, usize),
    x: &[Scalar],
    (a2, b2): (usize, usize),
    y: &[Scalar],
) -> Result<Vec<Scalar>, SegreError> {
    let n = seed.dim_v();
    let m = seed.dim_u();
    let words_a_1 = cache_a.normal_words(a1)?;
    let words_b_1 = cache_b.normal_words(b1)?;
    let words_a_2 = cache_a.normal_words(a2)?;
    let words_b_2 = cache_b.normal_words(b2)?;
    let b_dim_1 = words_b_1.len();
    let b_dim_2 = words_b_2.len();
    let b_dim_out = cache_b.dim(b1 + b2)?;
    let op = seed.extension(a2, b1);
    let m_pow = m.pow(b1 as u32);
    let n_pow = n.pow(a2 as u32);

    // Memoized pieces shared across coordinate pairs: the interleaving of
    // one B word across one A word, and the two side reductions.
    let mut interleaved: HashMap<(usize, usize), Vec<(usize, usize, Scalar)>> = HashMap::new();
    let mut left_reduced: HashMap<(usize, usize), Vec<Scalar>> = HashMap::new();
    let mut right_reduced: HashMap<(usize, usize), Vec<Scalar>> = HashMap::new();

    let mut out = vec![Scalar::zero(); cache_a.dim(a1 + a2)? * b_dim_out];
    for (xi, xc) in x.iter().enumerate() {
        if xc.is_zero() {
            continue;
        }
        let a_idx = xi / b_dim_1;
        let b_idx = xi % b_dim_1;
        for (yi, yc) in y.iter().enumerate() {
            if yc.is_zero() {
                continue;
            }
            let c_idx = yi / b_dim_2;
            let d_idx = yi % b_dim_2;

            let key = (b_idx, c_idx);
            if !interleaved.contains_key(&key) {
                let wb = words_b_1[b_idx].index(m);
                let wc = words_a_2[c_idx].index(n);
                let mut unit = vec![Scalar::zero(); op.dim()];
                unit[wb * n_pow + wc] = Scalar::one();
                let image = op.apply(&unit);
                let mut terms = Vec::new();
                for (t, coeff) in image.into_iter().enumerate() {
                    if !coeff.is_zero() {
                        terms.push((t / m_pow, t % m_pow, coeff));
                    }
                }
                interleaved.insert(key, terms);
            }

            let scale = xc * yc;
            for (c_free, b_free, coeff) in interleaved[&key].clone() {
                let a_coords = match left_reduced.get(&(a_idx, c_free)) {
                    Some(v) => v.clone(),
                    None => {
                        let mut coords = vec![Scalar::zero(); words_a_1.len()];
                        coords[a_idx] = Scalar::one();
                        let mut deg = a1;
                        for &l in Word::from_index(a2, n, c_free).letters() {
                            coords = cache_a.apply_letter(deg, &coords, l)?;
                            deg += 1;
                        }
                        left_reduced.insert((a_idx, c_free), coords.clone());
                        coords
                    }
                };
                let b_coords = match right_reduced.get(&(b_free, d_idx)) {
                    Some(v) => v.clone(),
                    None => {
                        let word = Word::from_index(b1, m, b_free).concat(&words_b_2[d_idx]);
                        let coords = cache_b.word_class(&word)?;
                        right_reduced.insert((b_free, d_idx), coords.clone());
                        coords
                    }
                };
                let weight = &scale * &coeff;
                for (ai, av) in a_coords.iter().enumerate() {
                    if av.is_zero() {
                        continue;
                    }
                    let head = &weight * av;
                    for (bi, bv) in b_coords.iter().enumerate() {
                        if !bv.is_zero() {
                            out[ai * b_dim_out + bi] += &head * bv;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One degree row of a [`CrossReport`].
#[derive(Debug, Clone)]
pub struct CrossRow {
    pub degree: usize,
    pub presentation_dim: usize,
    pub model_dim: usize,
    pub theta_rank: usize,
    pub products_checked: usize,
}

/// Why a cross-validation stopped.
#[derive(Debug, Clone)]
pub enum CrossFailure {
    DimensionMismatch {
        degree: usize,
        presentation_dim: usize,
        model_dim: usize,
    },
    RankDeficient {
        degree: usize,
        rank: usize,
        expected: usize,
    },
    IncompatibleProduct {
        degree: usize,
        word: Word,
        letter: usize,
    },
}

/// Outcome of comparing the presentation route with the component model.
#[derive(Debug, Clone)]
pub struct CrossReport {
    pub rows: Vec<CrossRow>,
    pub failure: Option<CrossFailure>,
}

impl CrossReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Cross-validates the canonical presentation of the twist against the
/// component model, up to `max_degree`.
pub fn cross_validate(twist: &TwistData, max_degree: usize) -> Result<CrossReport, SegreError> {
    let segre = segre_presentation(twist)?;
    cross_validate_presentation(segre.presentation(), twist, max_degree)
}

/// Cross-validates an arbitrary candidate presentation on the pair
/// generators against the component model of `twist`.
///
/// Three checks run per degree, stopping at the first failure: dimensions
/// agree; the generator-induced map Θ from presentation classes to model
/// coordinates has full rank; and Θ turns normal-word-times-generator
/// products in the presentation into model products. Together these certify
/// that Θ is an isomorphism of graded algebras on the checked window.
pub fn cross_validate_presentation(
    pres: &QuadraticPresentation,
    twist: &TwistData,
    max_degree: usize,
) -> Result<CrossReport, SegreError> {
    let n = twist.seed().dim_v();
    let m = twist.seed().dim_u();
    if pres.generator_count() != n * m {
        return Err(SegreError::Algebra(AlgebraError::GeneratorCountMismatch {
            left: pres.generator_count(),
            right: n * m,
        }));
    }
    let model = SegreComponentModel::build(twist, max_degree)?;
    let cache = DegreeCache::build(pres, max_degree)?;

    // Θ on generators: presentation generator k is the pair v_i ⊗ u_j with
    // the u index outermost.
    let mut gen_images = Vec::with_capacity(n * m);
    for k in 0..n * m {
        gen_images.push(model.generator(k % n, k / n)?);
    }

    let mut rows = Vec::new();
    let mut failure = None;
    // Θ per degree, indexed like the degree's normal words.
    let mut theta: Vec<Vec<Vec<Scalar>>> = vec![vec![vec![Scalar::one()]]];

    'degrees: for d in 1..=max_degree {
        let pres_dim = cache.dim(d)?;
        let model_dim = model.dim(d)?;
        if pres_dim != model_dim {
            failure = Some(CrossFailure::DimensionMismatch {
                degree: d,
                presentation_dim: pres_dim,
                model_dim,
            });
            break;
        }

        let prev_words = cache.normal_words(d - 1)?;

        // Extend Θ: every degree-d normal word is a normal prefix times a
        // generator, so its image is a model product of known images.
        let mut level = vec![Vec::new(); pres_dim];
        for (slot, w) in cache.normal_words(d)?.iter().enumerate() {
            let letters = w.letters();
            let prefix = Word::new(letters[..d - 1].to_vec());
            let prefix_slot = prev_words
                .iter()
                .position(|u| *u == prefix)
                .expect("normal words are prefix-closed");
            level[slot] = model.multiply(
                d - 1,
                &theta[d - 1][prefix_slot],
                1,
                &gen_images[letters[d - 1]],
            )?;
        }

        let rank = Matrix::from_rows(level.clone())
            .expect("theta images share the model dimension")
            .rank();
        let mut products_checked = 0;
        if rank != model_dim {
            failure = Some(CrossFailure::RankDeficient {
                degree: d,
                rank,
                expected: model_dim,
            });
            rows.push(CrossRow {
                degree: d,
                presentation_dim: pres_dim,
                model_dim,
                theta_rank: rank,
                products_checked,
            });
            break;
        }

        for (u_slot, u) in prev_words.iter().enumerate() {
            let mut unit = vec![Scalar::zero(); prev_words.len()];
            unit[u_slot] = Scalar::one();
            for l in 0..n * m {
                let reduced = cache.apply_letter(d - 1, &unit, l)?;
                let mut lhs = vec![Scalar::zero(); model_dim];
                for (slot, c) in reduced.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (t, v) in level[slot].iter().enumerate() {
                        if !v.is_zero() {
                            lhs[t] += c * v;
                        }
                    }
                }
                let rhs = model.multiply(d - 1, &theta[d - 1][u_slot], 1, &gen_images[l])?;
                products_checked += 1;
                if lhs != rhs {
                    failure = Some(CrossFailure::IncompatibleProduct {
                        degree: d,
                        word: u.append(l),
                        letter: l,
                    });
                    rows.push(CrossRow {
                        degree: d,
                        presentation_dim: pres_dim,
                        model_dim,
                        theta_rank: rank,
                        products_checked,
                    });
                    break 'degrees;
                }
            }
        }

        rows.push(CrossRow {
            degree: d,
            presentation_dim: pres_dim,
            model_dim,
            theta_rank: rank,
            products_checked,
        });
        theta.push(level);
    }

    Ok(CrossReport { rows, failure })
}
