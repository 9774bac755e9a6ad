//! Words and homogeneous elements of a free algebra.

use std::collections::BTreeMap;
use std::fmt;

use super::AlgebraError;
use crate::linalg::Scalar;

/// An ordered list of generator labels.
///
/// The order is part of the contract: it fixes the coordinates of the span
/// of the generators, and through lexicographic word indexing the
/// coordinates of every tensor power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    labels: Vec<String>,
}

impl GeneratorSet {
    pub fn new(labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.is_empty() {
            return Err(AlgebraError::EmptyGenerators);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GeneratorSet { labels })
    }

    /// Convenience constructor from string literals; panics on duplicates.
    pub fn from_labels(labels: &[&str]) -> Self {
        GeneratorSet::new(labels.iter().map(|s| s.to_string()).collect())
            .expect("labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The generator set of the dual algebra: same order, starred labels.
    pub fn starred(&self) -> GeneratorSet {
        GeneratorSet {
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
        }
    }
}

/// A monomial in the free algebra, stored as generator indices.
///
/// Words of equal degree are ordered lexicographically, which agrees with
/// their radix [`Word::index`] (the first letter is most significant).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Position of the word in the lexicographic enumeration of all words
    /// of its degree over `gen_count` generators.
    pub fn index(&self, gen_count: usize) -> usize {
        self.letters
            .iter()
            .fold(0, |acc, &l| acc * gen_count + l)
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(degree: usize, gen_count: usize, mut index: usize) -> Self {
        let mut letters = vec![0; degree];
        for slot in letters.iter_mut().rev() {
            *slot = index % gen_count;
            index /= gen_count;
        }
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn append(&self, letter: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word { letters }
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.letters.iter().copied().max()
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| gens.label(l))
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// A homogeneous element of the free algebra: a fixed degree and a sparse
/// coefficient map with no zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElement {
    degree: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero(degree: usize) -> Self {
        FreeElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(word: Word, coeff: Scalar) -> Self {
        let degree = word.degree();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        FreeElement { degree, terms }
    }

    /// Collects terms of the stated degree, summing duplicates and dropping
    /// zeros. Rejects words of any other degree.
    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = FreeElement::zero(degree);
        for (word, coeff) in terms {
            if word.degree() != degree {
                return Err(AlgebraError::DegreeMismatch {
                    expected: degree,
                    got: word.degree(),
                });
            }
            out.add_term(word, coeff);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_letter).max()
    }

    fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Panics on degree mismatch; adding inhomogeneous pieces is a
    /// programmer error at this layer.
    pub fn add(&self, other: &FreeElement) -> FreeElement {
        assert_eq!(
            self.degree, other.degree,
            "cannot add elements of degrees {} and {}",
            self.degree, other.degree
        );
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero(self.degree);
        }
        FreeElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k * c))
                .collect(),
        }
    }

    /// Concatenation product in the free algebra.
    pub fn concat_mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(self.degree + other.degree);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Dense coordinates over all words of the element's degree, indexed
    /// lexicographically.
    pub fn to_vector(&self, gen_count: usize) -> Vec<Scalar> {
        let size = gen_count.pow(self.degree as u32);
        let mut v = vec![Scalar::zero(); size];
        for (w, c) in &self.terms {
            v[w.index(gen_count)] = c.clone();
        }
        v
    }

    pub fn from_vector(degree: usize, gen_count: usize, v: &[Scalar]) -> Self {
        let mut out = FreeElement::zero(degree);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(Word::from_index(degree, gen_count, i), c.clone());
            }
        }
        out
    }

    /// Human-readable rendering like `X·Y - 2 Y·X`.
    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                out.push_str(&format!("{magnitude} "));
            }
            out.push_str(&w.render(gens));
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn word_index_round_trip() {
        for g in 1..=4usize {
            for d in 0..=3usize {
                let total = g.pow(d as u32);
                for idx in 0..total {
                    let w = Word::from_index(d, g, idx);
                    assert_eq!(w.degree(), d);
                    assert_eq!(w.index(g), idx);
                }
            }
        }
        // First letter is most significant.
        assert_eq!(Word::new(vec![1, 0]).index(2), 2);
        assert_eq!(Word::new(vec![0, 1]).index(2), 1);
    }

    #[test]
    fn word_order_matches_index_order() {
        let g = 3;
        let words: Vec<Word> = (0..27).map(|i| Word::from_index(3, g, i)).collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
    }

    #[test]
    fn free_element_collects_and_cancels() {
        let xy = Word::new(vec![0, 1]);
        let yx = Word::new(vec![1, 0]);
        let e = FreeElement::from_terms(
            2,
            vec![
                (xy.clone(), s(1)),
                (yx.clone(), s(-1)),
                (xy.clone(), s(2)),
            ],
        )
        .unwrap();
        assert_eq!(e.coefficient(&xy), s(3));
        assert_eq!(e.term_count(), 2);
        let cancelled = e.sub(&e);
        assert!(cancelled.is_zero());
        assert!(FreeElement::from_terms(2, vec![(Word::new(vec![0]), s(1))]).is_err());
    }

    #[test]
    fn concat_mul_matches_word_concatenation() {
        let x = FreeElement::single(Word::new(vec![0]), s(2));
        let y = FreeElement::single(Word::new(vec![1]), s(3));
        let p = x.concat_mul(&y);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coefficient(&Word::new(vec![0, 1])), s(6));
    }

    #[test]
    fn vector_round_trip() {
        let e = FreeElement::from_terms(
            2,
            vec![(Word::new(vec![0, 1]), s(5)), (Word::new(vec![1, 1]), s(-2))],
        )
        .unwrap();
        let v = e.to_vector(2);
        assert_eq!(v, vec![s(0), s(5), s(0), s(-2)]);
        assert_eq!(FreeElement::from_vector(2, 2, &v), e);
    }

    #[test]
    fn rendering() {
        let gens = GeneratorSet::from_labels(&["X", "Y"]);
        let e = FreeElement::from_terms(
            2,
            vec![(Word::new(vec![0, 1]), s(1)), (Word::new(vec![1, 0]), s(-2))],
        )
        .unwrap();
        assert_eq!(e.render(&gens), "X·Y - 2 Y·X");
        assert_eq!(FreeElement::zero(2).render(&gens), "0");
        assert_eq!(gens.starred().label(0), "X*");
    }

    #[test]
    fn generator_set_rejects_duplicates() {
        assert!(GeneratorSet::new(vec!["x".into(), "x".into()]).is_err());
        assert!(GeneratorSet::new(vec![]).is_err());
        let g = GeneratorSet::from_labels(&["x", "y"]);
        assert_eq!(g.index_of("y"), Some(1));
        assert_eq!(g.index_of("z"), None);
    }
}
