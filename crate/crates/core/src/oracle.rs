//! Truncated polynomials in finitely many variables.
//!
//! Nothing here goes through a change of basis: every basis element is
//! expanded from its defining sum over index tuples, so these expansions act
//! as an independent check on the algebraic routes elsewhere in the crate.
//! With `k ≥ n` variables the truncation is injective on degree `n`, so two
//! elements of degree `n` agree iff their `k`-variable expansions agree.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::basis::Basis;
use crate::error::{domain, Result};
use crate::lattice::{mobius_unchecked, refinements};
use crate::partitions::{bracket, IntegerPartition, Permutation, SetPartition};
use crate::{factorial, Rational};

/// Most letters a packed word can hold.
pub const MAX_WORD_LEN: usize = 16;
/// Largest supported variable count.
pub const MAX_VARIABLES: u8 = 15;

/// A word in noncommuting variables, packed four bits per letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct NCWord {
    len: u8,
    code: u64,
}

impl NCWord {
    pub fn new(letters: &[u8]) -> Result<Self> {
        if letters.len() > MAX_WORD_LEN {
            return domain(format!("words are limited to {MAX_WORD_LEN} letters"));
        }
        if letters.iter().any(|&l| l == 0 || l > MAX_VARIABLES) {
            return domain(format!("letters must lie in 1..={MAX_VARIABLES}"));
        }
        Ok(Self::pack(letters))
    }

    fn pack(letters: &[u8]) -> Self {
        let code = letters
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &l)| acc | (l as u64) << (4 * i));
        Self {
            len: letters.len() as u8,
            code,
        }
    }

    /// The constant word.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at position `i` (0-based).
    pub fn letter(&self, i: usize) -> u8 {
        (self.code >> (4 * i) & 0xf) as u8
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.letter(i)).collect()
    }

    fn concat(&self, other: &NCWord) -> NCWord {
        debug_assert!(self.len() + other.len() <= MAX_WORD_LEN);
        NCWord {
            len: self.len + other.len,
            code: self.code | other.code << (4 * self.len()),
        }
    }

    /// `η ∘ w`: the letter at position `j` moves to position `η(j)`.
    pub fn permute_positions(&self, eta: &Permutation) -> NCWord {
        let mut letters = vec![0u8; self.len()];
        for j in 0..self.len() {
            letters[eta.apply(j as u32 + 1) as usize - 1] = self.letter(j);
        }
        Self::pack(&letters)
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let s: Vec<String> = self.letters().iter().map(|l| format!("X{l}")).collect();
        f.write_str(&s.join(""))
    }
}

/// A polynomial in `k` noncommuting variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPolynomial {
    k: u8,
    terms: HashMap<NCWord, Rational>,
}

impl NCPolynomial {
    pub fn zero(k: u8) -> Self {
        Self {
            k,
            terms: HashMap::new(),
        }
    }

    pub fn variables(&self) -> u8 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &NCWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: NCWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &NCPolynomial, c: &Rational) {
        for (w, v) in &other.terms {
            self.add_term(*w, v * c);
        }
    }

    /// Concatenation product, keeping the variable count of `self`.
    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.k.max(other.k));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn permute_positions(&self, eta: &Permutation) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.k);
        for (w, c) in &self.terms {
            out.add_term(w.permute_positions(eta), c.clone());
        }
        out
    }

    /// Keeps only the words over the first `k` variables.
    pub fn truncate(&self, k: u8) -> NCPolynomial {
        NCPolynomial {
            k,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.letters().iter().all(|&l| l <= k))
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }
}

/// A monomial in commuting variables, as an exponent vector of length `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CWord {
    exponents: Vec<u8>,
}

impl CWord {
    pub fn new(exponents: Vec<u8>) -> Self {
        Self { exponents }
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &CWord) -> CWord {
        CWord {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// A polynomial in `k` commuting variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPolynomial {
    k: u8,
    terms: HashMap<CWord, Rational>,
}

impl CPolynomial {
    pub fn zero(k: u8) -> Self {
        Self {
            k,
            terms: HashMap::new(),
        }
    }

    pub fn one(k: u8) -> Self {
        let mut out = Self::zero(k);
        out.add_term(CWord::new(vec![0; k as usize]), Rational::one());
        out
    }

    pub fn variables(&self) -> u8 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &CWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CWord, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: CWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.exponents.len(), self.k as usize);
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &CPolynomial, c: &Rational) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> CPolynomial {
        let mut out = CPolynomial::zero(self.k);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &CPolynomial) -> CPolynomial {
        let mut out = CPolynomial::zero(self.k);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

fn check_variables(k: u8) -> Result<()> {
    if k == 0 || k > MAX_VARIABLES {
        return domain(format!("variable count must lie in 1..={MAX_VARIABLES}"));
    }
    Ok(())
}

/// Visits every tuple in `[k]^n`.
fn for_each_tuple(n: usize, k: u8, mut f: impl FnMut(&[u8])) {
    let mut t = vec![1u8; n];
    loop {
        f(&t);
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            t[pos] += 1;
            if t[pos] <= k {
                break;
            }
            t[pos] = 1;
            pos += 1;
        }
    }
}

/// Degree-`n` truncation to `k` variables of `m_π`, `p_π`, `e_π` or `x_π`.
pub fn expand_nc(basis: Basis, pi: &SetPartition, k: u8) -> Result<NCPolynomial> {
    check_variables(k)?;
    if !pi.is_standard() {
        return domain(format!("{pi} is not a partition of [n]"));
    }
    let n = pi.size();
    if n > MAX_WORD_LEN {
        return domain(format!("degree {n} exceeds the word limit {MAX_WORD_LEN}"));
    }
    if basis == Basis::X {
        let mut out = NCPolynomial::zero(k);
        for sigma in refinements(pi) {
            let mu = Rational::from_integer(mobius_unchecked(&sigma, pi));
            out.add_scaled(&expand_nc(Basis::P, &sigma, k)?, &mu);
        }
        return Ok(out);
    }
    let mut block = vec![0usize; n];
    for (b, blk) in pi.blocks().iter().enumerate() {
        for &e in blk {
            block[e as usize - 1] = b;
        }
    }
    let accept = |t: &[u8]| -> bool {
        (0..n).all(|j| {
            (j + 1..n).all(|l| {
                let same_block = block[j] == block[l];
                let same_letter = t[j] == t[l];
                match basis {
                    Basis::M => same_block == same_letter,
                    Basis::P => !same_block || same_letter,
                    Basis::E => !same_block || !same_letter,
                    Basis::X => unreachable!(),
                }
            })
        })
    };
    let mut out = NCPolynomial::zero(k);
    for_each_tuple(n, k, |t| {
        if accept(t) {
            out.add_term(NCWord::pack(t), Rational::one());
        }
    });
    Ok(out)
}

fn power_sum(i: u32, k: u8) -> CPolynomial {
    let mut out = CPolynomial::zero(k);
    for v in 0..k as usize {
        let mut e = vec![0u8; k as usize];
        e[v] = i as u8;
        out.add_term(CWord::new(e), Rational::one());
    }
    out
}

fn elementary(i: u32, k: u8) -> CPolynomial {
    let mut out = CPolynomial::zero(k);
    for subset in (0..k as usize).combinations(i as usize) {
        let mut e = vec![0u8; k as usize];
        for v in subset {
            e[v] = 1;
        }
        out.add_term(CWord::new(e), Rational::one());
    }
    out
}

/// Degree-`|λ|` truncation to `k` commuting variables of `m_λ`, `p_λ`, `e_λ`,
/// or `x_λ = Σ_{σ ≤ ⟦λ⟧} μ(σ, ⟦λ⟧) p_{λ(σ)}`.
pub fn expand_c(basis: Basis, lambda: &IntegerPartition, k: u8) -> Result<CPolynomial> {
    check_variables(k)?;
    if lambda.size() > u8::MAX as u32 {
        return domain("degree too large for the commutative oracle");
    }
    Ok(match basis {
        Basis::M => {
            let mut out = CPolynomial::zero(k);
            let l = lambda.len();
            if l <= k as usize {
                let mut seen = std::collections::HashSet::new();
                for idx in (0..k as usize).permutations(l) {
                    let mut e = vec![0u8; k as usize];
                    for (&v, &p) in idx.iter().zip(lambda.parts()) {
                        e[v] = p as u8;
                    }
                    if seen.insert(e.clone()) {
                        out.add_term(CWord::new(e), Rational::one());
                    }
                }
            }
            out
        }
        Basis::P => lambda
            .parts()
            .iter()
            .fold(CPolynomial::one(k), |acc, &p| acc.mul(&power_sum(p, k))),
        Basis::E => lambda
            .parts()
            .iter()
            .fold(CPolynomial::one(k), |acc, &p| acc.mul(&elementary(p, k))),
        Basis::X => {
            let top = bracket(lambda);
            let mut out = CPolynomial::zero(k);
            for sigma in refinements(&top) {
                let mu = Rational::from_integer(mobius_unchecked(&sigma, &top));
                out.add_scaled(&expand_c(Basis::P, &sigma.shape(), k)?, &mu);
            }
            out
        }
    })
}

/// `ρ`: lets the variables commute.
pub fn commute(poly: &NCPolynomial) -> CPolynomial {
    let k = poly.variables();
    let mut out = CPolynomial::zero(k);
    for (w, c) in poly.terms() {
        let mut e = vec![0u8; k as usize];
        for l in w.letters() {
            e[l as usize - 1] += 1;
        }
        out.add_term(CWord::new(e), c.clone());
    }
    out
}

/// `R`: sends `x_{i₁}⋯x_{iₙ}` to the average of `η ∘ (𝐱_{i₁}⋯𝐱_{iₙ})` over
/// all `η ∈ 𝔖ₙ`.
pub fn symmetrize_r(poly: &CPolynomial, n: usize) -> Result<NCPolynomial> {
    if n > MAX_WORD_LEN {
        return domain(format!("degree {n} exceeds the word limit {MAX_WORD_LEN}"));
    }
    let mut out = NCPolynomial::zero(poly.variables());
    let weight = Rational::new(1.into(), factorial(n as u32));
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    for (w, c) in poly.terms() {
        if w.degree() != n {
            return domain(format!("input is not homogeneous of degree {n}"));
        }
        let letters: Vec<u8> = w
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v as u8 + 1, e as usize))
            .collect();
        let word = NCWord::pack(&letters);
        let c = c * &weight;
        for eta in &perms {
            out.add_term(word.permute_positions(eta), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_n;
    use crate::partitions::integer_partitions;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn word(letters: &[u8]) -> NCWord {
        NCWord::new(letters).unwrap()
    }

    fn ip(parts: &[u32]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    fn cword(e: &[u8]) -> CWord {
        CWord::new(e.to_vec())
    }

    #[test]
    fn monomial_example() {
        let m = expand_nc(Basis::M, &sp("13/2"), 2).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.coefficient(&word(&[1, 2, 1])), Rational::one());
        assert_eq!(m.coefficient(&word(&[2, 1, 2])), Rational::one());
    }

    #[test]
    fn elementary_example() {
        let e = expand_nc(Basis::E, &sp("13/2"), 2).unwrap();
        let want = [[1, 1, 2], [1, 2, 2], [2, 2, 1], [2, 1, 1]];
        assert_eq!(e.len(), want.len());
        for w in want {
            assert_eq!(e.coefficient(&word(&w)), Rational::one());
        }
    }

    #[test]
    fn extra_example() {
        let x = expand_nc(Basis::X, &sp("13/2"), 3).unwrap();
        let mut want = NCPolynomial::zero(3);
        for s in ["1/2/3", "12/3", "1/23"] {
            want.add_scaled(&expand_nc(Basis::M, &sp(s), 3).unwrap(), &-Rational::one());
        }
        assert_eq!(x, want);
    }

    #[test]
    fn commutative_examples() {
        let m = expand_c(Basis::M, &ip(&[2, 1]), 2).unwrap();
        assert_eq!(m.terms().count(), 2);
        assert_eq!(m.coefficient(&cword(&[2, 1])), Rational::one());
        assert_eq!(m.coefficient(&cword(&[1, 2])), Rational::one());

        let p = expand_c(Basis::P, &ip(&[2, 1]), 2).unwrap();
        let want = power_sum(2, 2).mul(&power_sum(1, 2));
        assert_eq!(p, want);
        assert_eq!(p.coefficient(&cword(&[3, 0])), Rational::one());

        assert_eq!(expand_c(Basis::E, &ip(&[1]), 1).unwrap(), power_sum(1, 1));
        assert!(expand_c(Basis::E, &ip(&[2]), 1).unwrap().is_zero());
        assert!(expand_c(Basis::M, &ip(&[1, 1]), 1).unwrap().is_zero());
    }

    #[test]
    fn lemma_scalars() {
        for n in 1..=4u32 {
            for pi in enumerate_n(n) {
                let lambda = pi.shape();
                for k in 1..=4u8 {
                    let p = commute(&expand_nc(Basis::P, &pi, k).unwrap());
                    assert_eq!(p, expand_c(Basis::P, &lambda, k).unwrap());
                    let m = commute(&expand_nc(Basis::M, &pi, k).unwrap());
                    let scale = Rational::from_integer(lambda.superfactorial());
                    assert_eq!(m, expand_c(Basis::M, &lambda, k).unwrap().scale(&scale));
                    let e = commute(&expand_nc(Basis::E, &pi, k).unwrap());
                    let scale = Rational::from_integer(lambda.factorial());
                    assert_eq!(e, expand_c(Basis::E, &lambda, k).unwrap().scale(&scale));
                }
            }
        }
    }

    #[test]
    fn truncation_is_consistent() {
        for n in 1..=4u32 {
            for pi in enumerate_n(n) {
                for basis in Basis::ALL {
                    for k in 1..=4u8 {
                        let small = expand_nc(basis, &pi, k).unwrap();
                        let big = expand_nc(basis, &pi, k + 1).unwrap();
                        assert_eq!(big.truncate(k), small);
                    }
                }
            }
        }
    }

    #[test]
    fn position_action_permutes_partitions() {
        for n in 1..=4u32 {
            for pi in enumerate_n(n) {
                for eta in Permutation::all(n as usize) {
                    let moved = pi.apply_permutation(&eta).unwrap();
                    for basis in Basis::ALL {
                        let lhs = expand_nc(basis, &pi, 4).unwrap().permute_positions(&eta);
                        assert_eq!(lhs, expand_nc(basis, &moved, 4).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn products_concatenate() {
        for a in 0..=3u32 {
            for b in 0..=(5 - a).min(3) {
                let k = (a + b).max(1) as u8;
                for pi in enumerate_n(a) {
                    for sigma in enumerate_n(b) {
                        let lhs = expand_nc(Basis::P, &pi, k)
                            .unwrap()
                            .mul(&expand_nc(Basis::P, &sigma, k).unwrap());
                        let rhs = expand_nc(Basis::P, &pi.slash(&sigma).unwrap(), k).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn expansions_are_independent() {
        // rank of the coefficient matrix of {m_π : π ⊢ [n]} with k = n
        for n in 1..=4u32 {
            let polys: Vec<_> = enumerate_n(n)
                .map(|pi| expand_nc(Basis::P, &pi, n as u8).unwrap())
                .collect();
            let words: Vec<NCWord> = {
                let mut ws: Vec<_> = polys
                    .iter()
                    .flat_map(|p| p.terms().map(|(w, _)| *w))
                    .collect();
                ws.sort();
                ws.dedup();
                ws
            };
            let mut rows: Vec<Vec<Rational>> = polys
                .iter()
                .map(|p| words.iter().map(|w| p.coefficient(w)).collect())
                .collect();
            let mut rank = 0;
            for col in 0..words.len() {
                if let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                    rows.swap(rank, r);
                    let pivot = rows[rank][col].clone();
                    let pr = rows[rank].clone();
                    for (i, row) in rows.iter_mut().enumerate() {
                        if i != rank && !row[col].is_zero() {
                            let f = &row[col] / &pivot;
                            for (x, y) in row.iter_mut().zip(&pr) {
                                *x -= &f * y;
                            }
                        }
                    }
                    rank += 1;
                }
            }
            assert_eq!(rank, polys.len());
        }
    }

    #[test]
    fn symmetrize_then_commute_is_identity() {
        for n in 0..=4u32 {
            for lambda in integer_partitions(n) {
                for basis in [Basis::M, Basis::P, Basis::E] {
                    let q = expand_c(basis, &lambda, 4).unwrap();
                    let r = symmetrize_r(&q, n as usize).unwrap();
                    assert_eq!(commute(&r), q);
                }
            }
        }
        let mut q = CPolynomial::zero(2);
        q.add_term(cword(&[3, 0]), Rational::one());
        let r = symmetrize_r(&q, 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&word(&[1, 1, 1])), Rational::one());
        q.add_term(cword(&[1, 0]), Rational::one());
        assert!(symmetrize_r(&q, 3).is_err());
    }

    #[test]
    fn word_limits() {
        assert!(NCWord::new(&[0]).is_err());
        assert!(NCWord::new(&[16]).is_err());
        assert!(expand_nc(Basis::P, &sp("1"), 0).is_err());
        assert!(expand_nc(Basis::P, &sp("2"), 2).is_err());
        assert_eq!(word(&[1, 2, 3]).to_string(), "X1X2X3");
    }
}
