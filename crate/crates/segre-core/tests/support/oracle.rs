//! Brute-force reference computations, deliberately independent of the
//! library internals.
//!
//! The library computes Hilbert functions through an incremental degree
//! cache with its own elimination strategy. To cross-check it, this module
//! re-derives the same numbers from first principles: enumerate every word
//! of the requested degree, span the degree-d slice of the two-sided ideal
//! by padding each relation with all possible left and right words, and
//! subtract the rank obtained by a plain Gaussian elimination over
//! `BigRational`. Nothing here calls into `segre_core`.

use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// A quadratic relation: a linear combination of two-letter words, given as
/// `([first_letter, second_letter], coefficient)` pairs.
pub type OracleRelation = Vec<([usize; 2], Rat)>;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    assert!(d != 0, "oracle ratio with zero denominator");
    BigRational::new(n.into(), d.into())
}

/// Dimension of the degree-`d` component of `T(V)/(R)` for `gens` generators
/// and the given quadratic relations, by exhaustive word enumeration.
pub fn hilbert(gens: usize, relations: &[OracleRelation], degree: usize) -> usize {
    match degree {
        0 => 1,
        1 => gens,
        d => {
            let total = gens.pow(d as u32);
            let rows = ideal_slice_rows(gens, relations, d);
            total - rank(rows)
        }
    }
}

/// Rows spanning the degree-`d` slice of the two-sided ideal generated by
/// the relations: every `u * r * v` with `u`, `v` words and `r` a relation.
fn ideal_slice_rows(gens: usize, relations: &[OracleRelation], d: usize) -> Vec<Vec<Rat>> {
    let total = gens.pow(d as u32);
    let mut rows = Vec::new();
    for rel in relations {
        for left_len in 0..=(d - 2) {
            let right_len = d - 2 - left_len;
            let left_count = gens.pow(left_len as u32);
            let right_count = gens.pow(right_len as u32);
            for left in 0..left_count {
                for right in 0..right_count {
                    let mut row = vec![Rat::zero(); total];
                    for ([l1, l2], coeff) in rel {
                        let mid = l1 * gens + l2;
                        let idx = (left * gens * gens + mid) * right_count + right;
                        row[idx] += coeff;
                    }
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Rank by forward Gaussian elimination with partial (first nonzero) pivoting.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = Rat::one() / rows[rank][col].clone();
        for r in (rank + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() * &inv;
            for c in col..cols {
                let sub = rows[rank][c].clone() * &factor;
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Relations of the commutative polynomial ring on `gens` variables:
/// all commutators `x_i x_j - x_j x_i` for `i < j`.
pub fn commutator_relations(gens: usize) -> Vec<OracleRelation> {
    let mut rels = Vec::new();
    for i in 0..gens {
        for j in (i + 1)..gens {
            rels.push(vec![([i, j], Rat::one()), ([j, i], -Rat::one())]);
        }
    }
    rels
}

/// Deterministic pseudo-random relation sets for agreement sweeps, produced
/// by a small hand-rolled linear congruential generator so the oracle stays
/// free of library dependencies.
pub struct OracleRng(u64);

impl OracleRng {
    pub fn new(seed: u64) -> Self {
        OracleRng(seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    /// Small signed rational with numerator in -4..=4 and denominator 1..=3.
    pub fn small_rat(&mut self) -> Rat {
        let n = (self.next_u64() % 9) as i64 - 4;
        let d = (self.next_u64() % 3) as i64 + 1;
        ratio(n, d)
    }

    /// A random quadratic relation set over `gens` generators with
    /// `count` relations, each supported on at most `width` words.
    pub fn relation_set(&mut self, gens: usize, count: usize, width: usize) -> Vec<OracleRelation> {
        let mut rels = Vec::new();
        for _ in 0..count {
            let mut rel: OracleRelation = Vec::new();
            for _ in 0..width {
                let l1 = (self.next_u64() as usize) % gens;
                let l2 = (self.next_u64() as usize) % gens;
                let c = self.small_rat();
                if !c.is_zero() && c.abs() <= ratio(4, 1) {
                    rel.push(([l1, l2], c));
                }
            }
            if !rel.is_empty() {
                rels.push(rel);
            }
        }
        rels
    }
}
