//! Symmetric functions in noncommuting variables.
//!
//! Every change of basis factors through `p`:
//!
//! * `p_τ = Σ_{σ ≥ τ} m_σ` and `m_σ = Σ_{τ ≥ σ} μ(σ, τ) p_τ`
//! * `e_τ = Σ_{σ ≤ τ} μ(0̂, σ) p_σ` and `p_τ = μ(0̂, τ)⁻¹ Σ_{σ ≤ τ} μ(σ, τ) e_σ`
//! * `x_π = Σ_{σ ≤ π} μ(σ, π) p_σ` and `p_π = Σ_{σ ≤ π} x_σ`
//!
//! Rows of these maps are cached per set partition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::basis::Basis;
use crate::error::{domain, Result};
use crate::graphs::{count_acyclic_unique_sink, SinkCountBackend};
use crate::hopf_monoid::{c_coefficient, fock_coproduct, SpeciesBasis, SpeciesElement};
use crate::lattice::{
    coarsenings, enumerate_n, interval_unchecked, mobius_from_bottom, mobius_unchecked,
    refinements, refines,
};
use crate::oracle::{expand_nc, NCPolynomial};
use crate::partitions::{IntegerPartition, Permutation, SetPartition};
use crate::sym::SymExpr;
use crate::text::{braced, render_terms};
use crate::{factorial, signed_factorial, Rational};

/// A sparse combination of one NCSym basis, keyed by partitions of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCSymExpr {
    basis: Basis,
    terms: HashMap<SetPartition, Rational>,
}

impl NCSymExpr {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: HashMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, SetPartition::empty())
    }

    /// `b_π`. Keys are relabelled onto `[n]` if necessary.
    pub fn basis_element(basis: Basis, pi: SetPartition) -> Self {
        let mut out = Self::zero(basis);
        out.add_term(pi, Rational::one());
        out
    }

    pub fn from_terms(
        basis: Basis,
        terms: impl IntoIterator<Item = (SetPartition, Rational)>,
    ) -> Self {
        let mut out = Self::zero(basis);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn basis(&self) -> Basis {
        self.basis
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

    pub fn coefficient(&self, pi: &SetPartition) -> Rational {
        self.terms.get(pi).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order: degree, then block lists.
    pub fn terms(&self) -> Vec<(&SetPartition, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, pi: SetPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let pi = if pi.is_standard() {
            pi
        } else {
            pi.standardize()
        };
        let entry = self.terms.entry(pi.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&pi);
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(SetPartition::size).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> NCSymExpr {
        NCSymExpr::from_terms(
            self.basis,
            self.terms.iter().map(|(k, v)| (k.clone(), v * c)),
        )
    }

    /// Sum; `other` is re-expressed in the basis of `self`.
    pub fn add(&self, other: &NCSymExpr) -> NCSymExpr {
        let mut out = self.clone();
        for (k, v) in other.convert(self.basis).terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &NCSymExpr) -> NCSymExpr {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Equality as elements of NCSym, regardless of basis.
    pub fn same_element(&self, other: &NCSymExpr) -> bool {
        self.sub(other).is_zero()
    }

    pub fn convert(&self, target: Basis) -> NCSymExpr {
        convert(self, target)
    }

    pub fn product(&self, other: &NCSymExpr) -> NCSymExpr {
        product(self, other)
    }

    pub fn coproduct(&self) -> NCTensorExpr {
        coproduct(self)
    }

    /// Truncated expansion in `k` noncommuting variables.
    pub fn to_polynomial(&self, k: u8) -> Result<NCPolynomial> {
        let mut out = NCPolynomial::zero(k);
        for (pi, c) in &self.terms {
            out.add_scaled(&expand_nc(self.basis, pi, k)?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for NCSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Rational)> = self
            .terms()
            .into_iter()
            .map(|(k, c)| (format!("{}{}", self.basis, braced(k)), c.clone()))
            .collect();
        f.write_str(&render_terms(&terms))
    }
}

/// An element of `NCSym ⊗ NCSym`, one basis on both legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCTensorExpr {
    basis: Basis,
    terms: HashMap<(SetPartition, SetPartition), Rational>,
}

impl NCTensorExpr {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: HashMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
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

    pub fn coefficient(&self, left: &SetPartition, right: &SetPartition) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> Vec<(&(SetPartition, SetPartition), &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, left: SetPartition, right: SetPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &NCTensorExpr) -> NCTensorExpr {
        let mut out = self.clone();
        for ((l, r), c) in other.convert(self.basis).terms {
            out.add_term(l, r, c);
        }
        out
    }

    /// Both legs re-expressed in `target`.
    pub fn convert(&self, target: Basis) -> NCTensorExpr {
        if target == self.basis {
            return self.clone();
        }
        let mut out = NCTensorExpr::zero(target);
        for ((l, r), c) in &self.terms {
            let lx = NCSymExpr::basis_element(self.basis, l.clone()).convert(target);
            let rx = NCSymExpr::basis_element(self.basis, r.clone()).convert(target);
            for (lk, lc) in &lx.terms {
                for (rk, rc) in &rx.terms {
                    out.add_term(lk.clone(), rk.clone(), c * lc * rc);
                }
            }
        }
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, in the basis of `self`.
    pub fn product(&self, other: &NCTensorExpr) -> NCTensorExpr {
        let other = other.convert(self.basis);
        let mut out = NCTensorExpr::zero(self.basis);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = product(
                    &NCSymExpr::basis_element(self.basis, a.clone()),
                    &NCSymExpr::basis_element(self.basis, c.clone()),
                );
                let right = product(
                    &NCSymExpr::basis_element(self.basis, b.clone()),
                    &NCSymExpr::basis_element(self.basis, d.clone()),
                );
                for (lk, lc) in &left.terms {
                    for (rk, rc) in &right.terms {
                        out.add_term(lk.clone(), rk.clone(), x * y * lc * rc);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for NCTensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let leg = |a: &SetPartition| {
            if a.is_empty() {
                "1".to_string()
            } else {
                format!("{}{}", self.basis, braced(a))
            }
        };
        let terms: Vec<(String, Rational)> = self
            .terms()
            .into_iter()
            .map(|((l, r), c)| (format!("{} (x) {}", leg(l), leg(r)), c.clone()))
            .collect();
        f.write_str(&render_terms(&terms))
    }
}

/// Three-fold tensors, used to compare the two sides of coassociativity.
pub type TripleTensor = BTreeMap<(SetPartition, SetPartition, SetPartition), Rational>;

fn add_triple(
    out: &mut TripleTensor,
    key: (SetPartition, SetPartition, SetPartition),
    c: Rational,
) {
    let entry = out.entry(key.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// `(Δ ⊗ id)(t)`.
pub fn coproduct_left(t: &NCTensorExpr) -> TripleTensor {
    let mut out = TripleTensor::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), v) in coproduct(&NCSymExpr::basis_element(t.basis, l.clone())).terms {
            add_triple(&mut out, (a, b, r.clone()), c * v);
        }
    }
    out
}

/// `(id ⊗ Δ)(t)`.
pub fn coproduct_right(t: &NCTensorExpr) -> TripleTensor {
    let mut out = TripleTensor::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), v) in coproduct(&NCSymExpr::basis_element(t.basis, r.clone())).terms {
            add_triple(&mut out, (l.clone(), a, b), c * v);
        }
    }
    out
}

type Row = Arc<Vec<(SetPartition, Rational)>>;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Direction {
    ToP,
    FromP,
}

fn cached_row(basis: Basis, dir: Direction, pi: &SetPartition) -> Row {
    type Cache = RwLock<HashMap<(Basis, Direction, SetPartition), Row>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (basis, dir, pi.clone());
    if let Some(row) = cache.read().unwrap().get(&key) {
        return row.clone();
    }
    let row = Arc::new(match dir {
        Direction::ToP => to_p_row(basis, pi),
        Direction::FromP => from_p_row(basis, pi),
    });
    cache.write().unwrap().entry(key).or_insert(row).clone()
}

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `b_π` in the `p` basis.
fn to_p_row(basis: Basis, pi: &SetPartition) -> Vec<(SetPartition, Rational)> {
    match basis {
        Basis::P => vec![(pi.clone(), Rational::one())],
        Basis::M => coarsenings(pi)
            .into_iter()
            .map(|tau| {
                let mu = int(mobius_unchecked(pi, &tau));
                (tau, mu)
            })
            .collect(),
        Basis::E => refinements(pi)
            .into_iter()
            .map(|sigma| {
                let mu = int(mobius_from_bottom(&sigma));
                (sigma, mu)
            })
            .collect(),
        Basis::X => refinements(pi)
            .into_iter()
            .map(|sigma| {
                let mu = int(mobius_unchecked(&sigma, pi));
                (sigma, mu)
            })
            .collect(),
    }
}

/// `p_π` in basis `b`.
fn from_p_row(basis: Basis, pi: &SetPartition) -> Vec<(SetPartition, Rational)> {
    match basis {
        Basis::P => vec![(pi.clone(), Rational::one())],
        Basis::M => coarsenings(pi)
            .into_iter()
            .map(|s| (s, Rational::one()))
            .collect(),
        Basis::E => {
            let scale = int(mobius_from_bottom(pi)).recip();
            refinements(pi)
                .into_iter()
                .map(|sigma| {
                    let mu = int(mobius_unchecked(&sigma, pi));
                    (sigma, mu * &scale)
                })
                .collect()
        }
        Basis::X => refinements(pi)
            .into_iter()
            .map(|s| (s, Rational::one()))
            .collect(),
    }
}

/// Change of basis through `p`.
pub fn convert(expr: &NCSymExpr, target: Basis) -> NCSymExpr {
    if expr.basis == target {
        return expr.clone();
    }
    let p = if expr.basis == Basis::P {
        expr.clone()
    } else {
        let mut p = NCSymExpr::zero(Basis::P);
        for (pi, c) in &expr.terms {
            for (sigma, v) in cached_row(expr.basis, Direction::ToP, pi).iter() {
                p.add_term(sigma.clone(), c * v);
            }
        }
        p
    };
    if target == Basis::P {
        return p;
    }
    let mut out = NCSymExpr::zero(target);
    for (pi, c) in &p.terms {
        for (sigma, v) in cached_row(target, Direction::FromP, pi).iter() {
            out.add_term(sigma.clone(), c * v);
        }
    }
    out
}

/// Bilinear product. `p` and `x` multiply by the slash product; `m` and `e`
/// go through `p`. The result carries the basis of `a`.
pub fn product(a: &NCSymExpr, b: &NCSymExpr) -> NCSymExpr {
    match a.basis {
        Basis::P | Basis::X => {
            let b = b.convert(a.basis);
            let mut out = NCSymExpr::zero(a.basis);
            for (pa, ca) in &a.terms {
                for (pb, cb) in &b.terms {
                    out.add_term(pa.slash_unchecked(pb), ca * cb);
                }
            }
            out
        }
        Basis::M | Basis::E => product(&a.convert(Basis::P), &b.convert(Basis::P)).convert(a.basis),
    }
}

/// `Δ(p_π) = Σ p_{St(π|S₁)} ⊗ p_{St(π|S₂)}` over splittings `S₁ ⊔ S₂` that
/// do not cut a block.
fn p_coproduct(pi: &SetPartition) -> Vec<(SetPartition, SetPartition)> {
    let blocks = pi.blocks();
    let l = blocks.len();
    assert!(l < 32, "too many blocks for the coproduct");
    (0u32..(1 << l))
        .map(|mask| {
            let (left, right): (Vec<_>, Vec<_>) = (0..l).partition(|&i| mask >> i & 1 == 1);
            let pick = |idx: Vec<usize>| {
                SetPartition::canonical(idx.into_iter().map(|i| blocks[i].clone()).collect())
                    .standardize()
            };
            (pick(left), pick(right))
        })
        .collect()
}

/// Coproduct. On `x` this is the species formula pushed through the Fock
/// functor; `m`, `p` and `e` use the `p` rule.
pub fn coproduct(expr: &NCSymExpr) -> NCTensorExpr {
    match expr.basis {
        Basis::P => {
            let mut out = NCTensorExpr::zero(Basis::P);
            for (pi, c) in &expr.terms {
                for (l, r) in p_coproduct(pi) {
                    out.add_term(l, r, c.clone());
                }
            }
            out
        }
        Basis::X => {
            let mut out = NCTensorExpr::zero(Basis::X);
            for (pi, c) in &expr.terms {
                let v = SpeciesElement::basis_element(SpeciesBasis::X, pi.clone());
                let t = fock_coproduct(&v).expect("keys have ground [n]");
                for ((l, r), v) in t.terms {
                    out.add_term(l, r, c * v);
                }
            }
            out
        }
        Basis::M | Basis::E => coproduct(&expr.convert(Basis::P)).convert(expr.basis),
    }
}

/// Coproduct computed by converting to `p`, applying the `p` rule and
/// converting both legs back. Kept as an independent check of [`coproduct`].
pub fn coproduct_via_p(expr: &NCSymExpr) -> NCTensorExpr {
    coproduct(&expr.convert(Basis::P)).convert(expr.basis)
}

/// Coefficient of `x_σ ⊗ x_τ` in `Δ(x_π)`, summing `c_{B,C}` over the
/// splittings `[n] = S₁ ⊔ S₂` with `|S₁| = |σ|`, `B = σ` and `C = τ`
/// transported onto `S₁` and `S₂`.
pub fn x_coproduct_coefficient(
    pi: &SetPartition,
    sigma: &SetPartition,
    tau: &SetPartition,
) -> Result<Rational> {
    check_standard(pi)?;
    check_standard(sigma)?;
    check_standard(tau)?;
    let n = pi.size();
    let (a, b) = (sigma.size(), tau.size());
    if a + b != n {
        return domain(format!("|σ| + |τ| = {} but π has degree {n}", a + b));
    }
    let mut total = Rational::zero();
    for s1 in subsets_of_size(n, a) {
        let s2: Vec<u32> = (1..=n as u32).filter(|e| !s1.contains(e)).collect();
        let bb = sigma.destandardize(&s1)?;
        let cc = tau.destandardize(&s2)?;
        total += c_coefficient(pi, &s1, &s2, &bb, &cc)?;
    }
    Ok(total)
}

/// The closed form for `π = ⟦n⟧`: the sum of `(-1)^(ℓ(ν)-1) (ℓ(ν)-1)!` over
/// splittings `S₁ ⊔ S₂` and `ν = ν|S₁ ⊔ ν|S₂` with `σ ≤ St(ν|S₁)` and
/// `τ ≤ St(ν|S₂)`.
pub fn x_top_coproduct_coefficient(
    n: u32,
    sigma: &SetPartition,
    tau: &SetPartition,
) -> Result<Rational> {
    check_standard(sigma)?;
    check_standard(tau)?;
    let (a, b) = (sigma.size(), tau.size());
    if a + b != n as usize {
        return domain(format!("|σ| + |τ| = {} but n = {n}", a + b));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let len1: Vec<usize> = coarsenings(sigma).iter().map(SetPartition::len).collect();
    let len2: Vec<usize> = coarsenings(tau).iter().map(SetPartition::len).collect();
    // ν|S₁ ranges over the coarsenings of σ moved onto S₁; only lengths matter
    let mut per_split = BigInt::zero();
    for l1 in &len1 {
        for l2 in &len2 {
            per_split += signed_factorial(l1 + l2);
        }
    }
    let splits = factorial(n) / (factorial(a as u32) * factorial(b as u32));
    Ok(int(per_split * splits))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<u32>> {
    use itertools::Itertools;
    (1..=n as u32).combinations(k).collect()
}

fn check_standard(pi: &SetPartition) -> Result<()> {
    if pi.is_standard() {
        Ok(())
    } else {
        domain(format!("{pi} is not a partition of [n]"))
    }
}

/// `ω(p_π) = (-1)^(n - ℓ(π)) p_π`, extended linearly.
pub fn omega(expr: &NCSymExpr) -> NCSymExpr {
    let p = expr.convert(Basis::P);
    let scaled = NCSymExpr::from_terms(
        Basis::P,
        p.terms.iter().map(|(pi, c)| {
            let odd = (pi.size() - pi.len()) % 2 == 1;
            (pi.clone(), if odd { -c } else { c.clone() })
        }),
    );
    scaled.convert(expr.basis)
}

/// `η ∘ b_π = b_{η(π)}`; every key must have degree `|η|`.
pub fn permute(eta: &Permutation, expr: &NCSymExpr) -> Result<NCSymExpr> {
    let mut out = NCSymExpr::zero(expr.basis);
    for (pi, c) in &expr.terms {
        out.add_term(pi.apply_permutation(eta)?, c.clone());
    }
    Ok(out)
}

/// `ρ`: lets the variables commute. `ρ(m_π) = λ^! m_λ`, `ρ(p_π) = p_λ`,
/// `ρ(e_π) = λ! e_λ` and `ρ(x_π) = x_λ` with `λ = λ(π)`.
pub fn rho(expr: &NCSymExpr) -> SymExpr {
    let mut out = SymExpr::zero(expr.basis);
    for (pi, c) in &expr.terms {
        let lambda = pi.shape();
        let scalar = match expr.basis {
            Basis::M => lambda.superfactorial(),
            Basis::E => lambda.factorial(),
            Basis::P | Basis::X => BigInt::one(),
        };
        out.add_term(lambda, c * int(scalar));
    }
    out
}

/// `R(p_λ) = (λ! λ^! / n!) Σ_{λ(τ) = λ} p_τ`, returned in the basis of the
/// input.
pub fn lift_r(expr: &SymExpr) -> NCSymExpr {
    let p = expr.convert(Basis::P);
    let mut out = NCSymExpr::zero(Basis::P);
    let mut by_degree: HashMap<u32, Vec<(&IntegerPartition, &Rational)>> = HashMap::new();
    for (l, c) in p.terms() {
        by_degree.entry(l.size()).or_default().push((l, c));
    }
    for (n, terms) in by_degree {
        let mut classes: HashMap<IntegerPartition, Vec<SetPartition>> = HashMap::new();
        for tau in enumerate_n(n) {
            classes.entry(tau.shape()).or_default().push(tau);
        }
        for (l, c) in terms {
            let weight = Rational::new(l.factorial() * l.superfactorial(), factorial(n));
            for tau in &classes[l] {
                out.add_term(tau.clone(), c * &weight);
            }
        }
    }
    out.convert(expr.basis())
}

/// `x_⟦n⟧ = (-1)^(n-1) Σ_σ c_σ m_σ`, with `c_σ` the number of acyclic
/// orientations of `K_σ` with a unique sink at a fixed vertex.
pub fn x_to_m_top(n: u32) -> Result<NCSymExpr> {
    x_to_m_top_with(n, SinkCountBackend::Chromatic)
}

pub fn x_to_m_top_with(n: u32, backend: SinkCountBackend) -> Result<NCSymExpr> {
    if n == 0 {
        return domain("x_to_m_top needs n ≥ 1");
    }
    let mut out = NCSymExpr::zero(Basis::M);
    for sigma in enumerate_n(n) {
        let c = count_acyclic_unique_sink(&sigma, 1, backend)?;
        let c = if n % 2 == 0 { -c } else { c };
        out.add_term(sigma, int(c));
    }
    Ok(out)
}

/// Coefficient of `e_σ` in `x_π`:
/// `Σ_{σ ≤ τ ≤ π} μ(τ, π) μ(σ, τ) / μ(0̂, τ)`.
pub fn x_e_expansion_coefficient(pi: &SetPartition, sigma: &SetPartition) -> Result<Rational> {
    if pi.ground() != sigma.ground() {
        return domain(format!("{pi} and {sigma} have different ground sets"));
    }
    if !refines(sigma, pi) {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for tau in interval_unchecked(sigma, pi) {
        let num = mobius_unchecked(&tau, pi) * mobius_unchecked(sigma, &tau);
        total += Rational::new(num, mobius_from_bottom(&tau));
    }
    Ok(total)
}

/// Sign of a nonzero rational as `±1`, or `0`.
pub(crate) fn sign(c: &Rational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn el(b: Basis, s: &str) -> NCSymExpr {
        NCSymExpr::basis_element(b, sp(s))
    }

    fn expr(b: Basis, terms: &[(&str, i64)]) -> NCSymExpr {
        NCSymExpr::from_terms(b, terms.iter().map(|(s, c)| (sp(s), rat(*c))))
    }

    #[test]
    fn conversion_examples() {
        let x = el(Basis::X, "13/2");
        assert_eq!(
            x.convert(Basis::P),
            expr(Basis::P, &[("13/2", 1), ("1/2/3", -1)])
        );
        assert_eq!(
            x.convert(Basis::M),
            expr(Basis::M, &[("1/2/3", -1), ("12/3", -1), ("1/23", -1)])
        );
        assert_eq!(x.convert(Basis::X), x);
        assert_eq!(
            el(Basis::X, "12").convert(Basis::E),
            expr(Basis::E, &[("12", -1)])
        );
    }

    #[test]
    fn product_examples() {
        let got = el(Basis::P, "13/24").product(&el(Basis::P, "13/2"));
        assert_eq!(got, el(Basis::P, "13/24/57/6"));
        for b in Basis::ALL {
            let v = el(b, "13/2");
            assert_eq!(NCSymExpr::one(b).product(&v), v);
            assert_eq!(v.product(&NCSymExpr::one(b)), v);
        }
        assert_eq!(
            el(Basis::X, "12").product(&el(Basis::X, "1")),
            el(Basis::X, "12/3")
        );
    }

    #[test]
    fn coproduct_examples() {
        let t = el(Basis::P, "13/2").coproduct();
        let e = SetPartition::empty();
        assert_eq!(t.len(), 4);
        for (l, r) in [
            (e.clone(), sp("13/2")),
            (sp("12"), sp("1")),
            (sp("1"), sp("12")),
            (sp("13/2"), e.clone()),
        ] {
            assert_eq!(t.coefficient(&l, &r), rat(1));
        }
        for b in Basis::ALL {
            let u = NCSymExpr::one(b).coproduct();
            assert_eq!(u.len(), 1);
            assert_eq!(u.coefficient(&e, &e), rat(1));
        }
        let t = el(Basis::X, "1234").coproduct();
        assert_eq!(t.coefficient(&sp("1/2"), &sp("12")), rat(6));
        assert_eq!(
            x_coproduct_coefficient(&sp("1234"), &sp("1/2"), &sp("12")).unwrap(),
            rat(6)
        );
        assert_eq!(
            x_top_coproduct_coefficient(4, &sp("1/2"), &sp("12")).unwrap(),
            rat(6)
        );
        for n in 1..=4 {
            let top = SetPartition::top(n);
            assert_eq!(x_coproduct_coefficient(&top, &e, &top).unwrap(), rat(1));
        }
        assert!(x_coproduct_coefficient(&sp("1234"), &sp("1/2"), &sp("1")).is_err());
    }

    #[test]
    fn x_coproduct_matches_p_route() {
        for n in 0..=5 {
            for pi in enumerate_n(n) {
                let x = NCSymExpr::basis_element(Basis::X, pi.clone());
                let direct = x.coproduct();
                assert_eq!(direct, coproduct_via_p(&x), "π = {pi}");
                if n <= 4 {
                    for a in 0..=n {
                        for sigma in enumerate_n(a) {
                            for tau in enumerate_n(n - a) {
                                let want = direct.coefficient(&sigma, &tau);
                                let got = x_coproduct_coefficient(&pi, &sigma, &tau).unwrap();
                                assert_eq!(got, want);
                                if pi == SetPartition::top(n) {
                                    assert_eq!(
                                        x_top_coproduct_coefficient(n, &sigma, &tau).unwrap(),
                                        want
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega(&el(Basis::P, "13/2")),
            expr(Basis::P, &[("13/2", -1)])
        );
        assert_eq!(
            omega(&el(Basis::X, "123")).convert(Basis::P),
            expr(
                Basis::P,
                &[
                    ("123", 1),
                    ("12/3", 1),
                    ("13/2", 1),
                    ("1/23", 1),
                    ("1/2/3", 2)
                ]
            )
        );
        for b in Basis::ALL {
            let v = el(b, "13/2/4");
            assert_eq!(omega(&omega(&v)), v);
        }
    }

    #[test]
    fn permute_examples() {
        let eta: Permutation = "1324".parse().unwrap();
        assert_eq!(
            permute(&eta, &el(Basis::X, "12/34")).unwrap(),
            el(Basis::X, "13/24")
        );
        let id = Permutation::identity(3);
        let v = expr(Basis::M, &[("13/2", 3), ("123", -1)]);
        assert_eq!(permute(&id, &v).unwrap(), v);
        assert!(permute(&eta, &el(Basis::P, "12")).is_err());
        for eta in Permutation::all(4) {
            for pi in enumerate_n(4) {
                let v = NCSymExpr::basis_element(Basis::P, pi);
                assert_eq!(
                    omega(&permute(&eta, &v).unwrap()),
                    permute(&eta, &omega(&v)).unwrap()
                );
            }
        }
    }

    #[test]
    fn rho_examples() {
        let ip = |s: &str| s.parse::<IntegerPartition>().unwrap();
        assert_eq!(
            rho(&el(Basis::M, "13/2")),
            SymExpr::basis_element(Basis::M, ip("2,1"))
        );
        assert_eq!(
            rho(&el(Basis::M, "1/2")),
            SymExpr::from_terms(Basis::M, [(ip("1,1"), rat(2))])
        );
        assert_eq!(
            rho(&el(Basis::E, "12/3")),
            SymExpr::from_terms(Basis::E, [(ip("2,1"), rat(2))])
        );
        for n in 0..=5 {
            for pi in enumerate_n(n) {
                let p = NCSymExpr::basis_element(Basis::P, pi.clone());
                assert_eq!(rho(&p), SymExpr::basis_element(Basis::P, pi.shape()));
                let x = NCSymExpr::basis_element(Basis::X, pi.clone());
                assert!(rho(&x).same_element(&rho(&x.convert(Basis::P))));
                for b in Basis::ALL {
                    let v = NCSymExpr::basis_element(b, pi.clone());
                    assert!(rho(&v).same_element(&rho(&v.convert(Basis::P))), "{b} {pi}");
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_r(&SymExpr::one(Basis::P)), NCSymExpr::one(Basis::P));
        let x3 = SymExpr::basis_element(Basis::X, "3".parse().unwrap());
        assert_eq!(lift_r(&x3), el(Basis::X, "123"));
        for n in 0..=6 {
            for l in crate::partitions::integer_partitions(n) {
                let p = SymExpr::basis_element(Basis::P, l);
                assert_eq!(rho(&lift_r(&p)), p);
            }
        }
    }

    #[test]
    fn x_to_m_examples() {
        assert_eq!(x_to_m_top(1).unwrap(), el(Basis::M, "1"));
        assert_eq!(x_to_m_top(2).unwrap(), expr(Basis::M, &[("1/2", -1)]));
        assert_eq!(
            x_to_m_top(3).unwrap(),
            expr(
                Basis::M,
                &[("1/2/3", 2), ("1/23", 1), ("12/3", 1), ("13/2", 1)]
            )
        );
        assert_eq!(
            x_to_m_top(3).unwrap().to_string(),
            "2*m{1/2/3} + 1*m{1/2,3} + 1*m{1,2/3} + 1*m{1,3/2}"
        );
        for n in 1..=6 {
            let top = NCSymExpr::basis_element(Basis::X, SetPartition::top(n));
            assert_eq!(x_to_m_top(n).unwrap(), top.convert(Basis::M));
        }
        assert!(x_to_m_top(0).is_err());
    }

    #[test]
    fn e_coefficients() {
        assert_eq!(
            x_e_expansion_coefficient(&sp("12"), &sp("12")).unwrap(),
            rat(-1)
        );
        assert_eq!(
            x_e_expansion_coefficient(&sp("12/3"), &sp("13/2")).unwrap(),
            rat(0)
        );
        assert!(x_e_expansion_coefficient(&sp("12"), &sp("123")).is_err());
        for n in 0..=5 {
            for pi in enumerate_n(n) {
                let e = NCSymExpr::basis_element(Basis::X, pi.clone()).convert(Basis::E);
                for sigma in enumerate_n(n) {
                    assert_eq!(
                        x_e_expansion_coefficient(&pi, &sigma).unwrap(),
                        e.coefficient(&sigma)
                    );
                }
            }
        }
        let e3 = NCSymExpr::basis_element(Basis::X, SetPartition::top(3)).convert(Basis::E);
        assert!(e3.terms().iter().all(|(_, c)| c.is_positive()));
    }

    #[test]
    fn conversions_round_trip() {
        for n in 0..=5 {
            for pi in enumerate_n(n) {
                for from in Basis::ALL {
                    let v = NCSymExpr::basis_element(from, pi.clone());
                    for to in Basis::ALL {
                        assert_eq!(v.convert(to).convert(from), v);
                    }
                }
            }
        }
    }

    #[test]
    fn display() {
        let v = expr(Basis::M, &[("1/2/3", -1), ("12/3", 2)]);
        assert_eq!(v.to_string(), "-1*m{1/2/3} + 2*m{1,2/3}");
        let t = el(Basis::P, "1").coproduct();
        assert_eq!(t.to_string(), "1*1 (x) p{1} + 1*p{1} (x) 1");
    }
}
