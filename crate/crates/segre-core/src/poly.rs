//! Just-enough exact polynomial arithmetic for the degree-2 normal-element
//! search: sparse polynomials in a handful of parameters, minor
//! determinants, elimination by resultants, and rational root extraction.
//!
//! Univariate polynomials are plain coefficient vectors in ascending power
//! order; trailing zeros are insignificant.

use std::collections::{BTreeMap, HashMap};

use num::bigint::BigInt;
use num::{Integer, One, Signed};

use crate::linalg::Scalar;

/// A polynomial in a fixed number of parameters, stored sparsely by
/// exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(exp, Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exp: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(exp, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Scales so the first stored coefficient is 1; used to deduplicate
    /// proportional polynomials.
    pub fn normalized(&self) -> MultiPoly {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&c.inverse().expect("stored coefficients are nonzero")),
        }
    }

    /// Fixes one variable to a value; the result no longer involves it.
    pub fn substitute(&self, var: usize, value: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e[var] {
                term = &term * value;
            }
            let mut exp = e.clone();
            exp[var] = 0;
            out.insert(exp, term);
        }
        out
    }

    /// Coefficients with respect to one variable, ascending; each entry is
    /// a polynomial free of that variable.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(self.nvars); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            let power = exp[var];
            exp[var] = 0;
            out[power].insert(exp, c.clone());
        }
        out
    }

    /// The variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|e| e[v] > 0))
            .collect()
    }

    /// Reads the polynomial as univariate in `var`; None if any other
    /// variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            for (i, &p) in e.iter().enumerate() {
                if i != var && p > 0 {
                    return None;
                }
            }
            out[e[var]] = c.clone();
        }
        Some(uni_trim(out))
    }
}

/// All maximal minors of a tall matrix (rows >= cols), one per row subset,
/// ordered by the sorted row subsets.
///
/// Shared sub-minors are computed once: the expansion walks the columns
/// left to right, keeping one partial determinant per used row set, so a
/// 15x5 matrix costs thousands of small polynomial products rather than
/// millions.
pub(crate) fn all_maximal_minors(mat: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let r = mat.len();
    assert!(r > 0, "empty matrix");
    let c = mat[0].len();
    assert!(r >= c && c > 0, "matrix must be tall");
    let nvars = mat[0][0].nvars;
    let mut states: HashMap<Vec<usize>, MultiPoly> = HashMap::new();
    states.insert(Vec::new(), MultiPoly::constant(nvars, Scalar::one()));
    for col in 0..c {
        let mut next: HashMap<Vec<usize>, MultiPoly> = HashMap::new();
        for (rows, minor) in &states {
            for t in 0..r {
                if rows.binary_search(&t).is_ok() {
                    continue;
                }
                let term = mat[t][col].mul(minor);
                if term.is_zero() {
                    continue;
                }
                let idx = rows.partition_point(|&x| x < t);
                let mut grown = rows.clone();
                grown.insert(idx, t);
                let entry = next
                    .entry(grown)
                    .or_insert_with(|| MultiPoly::zero(nvars));
                *entry = if (idx + col) % 2 == 0 {
                    entry.add(&term)
                } else {
                    entry.sub(&term)
                };
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut pick = (0..c).collect::<Vec<_>>();
    loop {
        subsets.push(pick.clone());
        let mut i = c;
        while i > 0 && pick[i - 1] == r - c + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        pick[i - 1] += 1;
        for j in i..c {
            pick[j] = pick[j - 1] + 1;
        }
    }
    subsets
        .into_iter()
        .map(|rows| states.remove(&rows).unwrap_or_else(|| MultiPoly::zero(nvars)))
        .collect()
}

pub(crate) fn uni_trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

/// None for the zero polynomial.
pub(crate) fn uni_degree(v: &[Scalar]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn uni_eval(v: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in v.iter().rev() {
        acc = &acc * x + c.clone();
    }
    acc
}

pub(crate) fn uni_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if uni_degree(a).is_none() || uni_degree(b).is_none() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    uni_trim(out)
}

/// Exact division with remainder.
pub(crate) fn uni_divmod(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let db = uni_degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Scalar> = uni_trim(a.to_vec());
    let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(db)];
    while let Some(dr) = uni_degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        quot[dr - db] = factor.clone();
        for (k, c) in b.iter().enumerate() {
            if !c.is_zero() {
                let sub = &factor * c;
                rem[dr - db + k] = &rem[dr - db + k] - &sub;
            }
        }
        rem = uni_trim(rem);
    }
    (uni_trim(quot), rem)
}

/// Monic greatest common divisor.
pub(crate) fn uni_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut f = uni_trim(a.to_vec());
    let mut g = uni_trim(b.to_vec());
    while uni_degree(&g).is_some() {
        let (_, r) = uni_divmod(&f, &g);
        f = g;
        g = r;
    }
    match uni_degree(&f) {
        None => Vec::new(),
        Some(d) => {
            let lead = f[d].clone();
            uni_trim(f.into_iter().map(|c| &c / &lead).collect())
        }
    }
}

pub(crate) fn uni_derivative(v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (i, c) in v.iter().enumerate().skip(1) {
        out.push(c * &Scalar::from_int(i as i64));
    }
    uni_trim(out)
}

/// The square-free part, with the same roots and no repeated factors.
pub(crate) fn square_free(v: &[Scalar]) -> Vec<Scalar> {
    let f = uni_trim(v.to_vec());
    if uni_degree(&f).map_or(true, |d| d == 0) {
        return f;
    }
    let g = uni_gcd(&f, &uni_derivative(&f));
    if uni_degree(&g).map_or(true, |d| d == 0) {
        return f;
    }
    let (q, r) = uni_divmod(&f, &g);
    debug_assert!(r.is_empty(), "square-free division must be exact");
    q
}

/// Divisors of a positive integer, or None when trial division up to the
/// bound cannot finish the factorization.
fn divisors(n: &BigInt, bound: u64) -> Option<Vec<BigInt>> {
    let mut remaining = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(bound);
    while &p * &p <= remaining && p <= limit {
        if remaining.is_multiple_of(&p) {
            let mut mult = 0u32;
            while remaining.is_multiple_of(&p) {
                remaining /= &p;
                mult += 1;
            }
            factors.push((p.clone(), mult));
        }
        p += 1u32;
    }
    if remaining > BigInt::one() {
        if &remaining > &(&limit * &limit) {
            return None;
        }
        factors.push((remaining, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, mult) in factors {
        let mut extended = Vec::new();
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=mult {
                extended.push(d * &power);
                power *= &prime;
            }
        }
        divs = extended;
    }
    Some(divs)
}

/// Extracts all rational roots, returning them alongside the remaining
/// factor. A leftover of degree ≥ 1 means the polynomial has irrational or
/// complex roots (or its coefficients were too large to factor) and the
/// caller must treat the result as partial.
pub(crate) fn rational_roots(v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut roots = Vec::new();
    let mut f = square_free(v);
    loop {
        let Some(d) = uni_degree(&f) else {
            return (roots, f);
        };
        match d {
            0 => return (roots, f),
            1 => {
                roots.push(-(&f[0] / &f[1]));
                return (roots, vec![Scalar::one()]);
            }
            2 => {
                let disc = &(&f[1] * &f[1]) - &(&(&f[0] * &f[2]) * &Scalar::from_int(4));
                let Some(r) = disc.rational_sqrt() else {
                    return (roots, f);
                };
                let two_a = &f[2] + &f[2];
                roots.push(&(-&f[1] + &r) / &two_a);
                if !r.is_zero() {
                    roots.push(&(-&f[1] - &r) / &two_a);
                }
                return (roots, vec![Scalar::one()]);
            }
            _ => {
                if f[0].is_zero() {
                    roots.push(Scalar::zero());
                    f = uni_trim(f.into_iter().skip(1).collect());
                    continue;
                }
                // Clear denominators; rational roots are then p/q with
                // p | constant term and q | leading coefficient.
                let mut denom_lcm = BigInt::one();
                for c in &f {
                    denom_lcm = denom_lcm.lcm(c.denominator());
                }
                let scale = Scalar::from_big_ratio(denom_lcm, BigInt::one());
                let ints: Vec<BigInt> = f.iter().map(|c| (c * &scale).numerator().clone()).collect();
                let (Some(ps), Some(qs)) = (
                    divisors(&ints[0].abs(), 1_000_000),
                    divisors(&ints[d].abs(), 1_000_000),
                ) else {
                    return (roots, f);
                };
                let mut found = None;
                'search: for p in &ps {
                    for q in &qs {
                        for sign in [1i64, -1] {
                            let cand =
                                Scalar::from_big_ratio(p * BigInt::from(sign), q.clone());
                            if uni_eval(&f, &cand).is_zero() {
                                found = Some(cand);
                                break 'search;
                            }
                        }
                    }
                }
                match found {
                    None => return (roots, f),
                    Some(root) => {
                        let linear = vec![-root.clone(), Scalar::one()];
                        let (q, r) = uni_divmod(&f, &linear);
                        debug_assert!(r.is_empty(), "deflation by a verified root is exact");
                        roots.push(root);
                        f = q;
                    }
                }
            }
        }
    }
}

/// Lagrange interpolation through distinct sample points.
pub(crate) fn interpolate(points: &[(Scalar, Scalar)]) -> Vec<Scalar> {
    let mut acc: Vec<Scalar> = Vec::new();
    for (k, (xk, yk)) in points.iter().enumerate() {
        if yk.is_zero() {
            continue;
        }
        let mut basis = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            basis = uni_mul(&basis, &[-xj.clone(), Scalar::one()]);
            denom = &denom * &(xk - xj);
        }
        let weight = yk / &denom;
        if acc.len() < basis.len() {
            acc.resize(basis.len(), Scalar::zero());
        }
        for (i, c) in basis.iter().enumerate() {
            acc[i] += c * &weight;
        }
    }
    uni_trim(acc)
}

/// Exact determinant of a square rational matrix by elimination.
pub(crate) fn determinant(mut mat: Vec<Vec<Scalar>>) -> Scalar {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "square matrix required");
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot_row != col {
            mat.swap(pivot_row, col);
            det = -det;
        }
        let pivot = mat[col][col].clone();
        det = &det * &pivot;
        for r in (col + 1)..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &mat[col][c];
                mat[r][c] = &mat[r][c] - &sub;
            }
        }
    }
    det
}

/// Resultant of two polynomials in `elim` whose coefficients involve only
/// `keep`, returned as a univariate polynomial in `keep`.
///
/// Computed by evaluation and interpolation: the Sylvester determinant with
/// frozen formal degrees commutes with specializing `keep`, so sampling
/// enough points determines the polynomial exactly.
pub(crate) fn resultant(
    f: &MultiPoly,
    g: &MultiPoly,
    elim: usize,
    keep: usize,
) -> Vec<Scalar> {
    let cf: Vec<Vec<Scalar>> = f
        .coefficients_in(elim)
        .iter()
        .map(|c| c.to_univariate(keep).expect("coefficients must involve only the kept variable"))
        .collect();
    let cg: Vec<Vec<Scalar>> = g
        .coefficients_in(elim)
        .iter()
        .map(|c| c.to_univariate(keep).expect("coefficients must involve only the kept variable"))
        .collect();
    let nf = cf.len() - 1;
    let ng = cg.len() - 1;
    if nf == 0 && ng == 0 {
        return vec![Scalar::one()];
    }
    // A polynomial constant in the eliminated variable contributes its
    // power; Res(c, g) = c^{deg g}.
    if nf == 0 {
        let mut acc = vec![Scalar::one()];
        for _ in 0..ng {
            acc = uni_mul(&acc, &cf[0]);
        }
        return acc;
    }
    if ng == 0 {
        let mut acc = vec![Scalar::one()];
        for _ in 0..nf {
            acc = uni_mul(&acc, &cg[0]);
        }
        return acc;
    }

    let coeff_deg = |c: &[Vec<Scalar>]| {
        c.iter()
            .map(|p| uni_degree(p).map_or(0, |d| d))
            .max()
            .unwrap_or(0)
    };
    let bound = ng * coeff_deg(&cf) + nf * coeff_deg(&cg);
    let size = nf + ng;
    let mut points = Vec::with_capacity(bound + 1);
    for t in 0..=bound {
        let x = Scalar::from_int(t as i64);
        let fe: Vec<Scalar> = cf.iter().map(|c| uni_eval(c, &x)).collect();
        let ge: Vec<Scalar> = cg.iter().map(|c| uni_eval(c, &x)).collect();
        let mut sylvester = vec![vec![Scalar::zero(); size]; size];
        for row in 0..ng {
            for (k, c) in fe.iter().enumerate() {
                sylvester[row][row + nf - k] = c.clone();
            }
        }
        for row in 0..nf {
            for (k, c) in ge.iter().enumerate() {
                sylvester[ng + row][row + ng - k] = c.clone();
            }
        }
        points.push((x, determinant(sylvester)));
    }
    interpolate(&points)
}
