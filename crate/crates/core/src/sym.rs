//! Classical symmetric functions in the `m`, `p`, `e` and `x` bases.
//!
//! Change of basis goes through `p`. The `p → m` and `e → m` tables are read
//! off the commutative oracle (expand in `n` variables and collect the
//! coefficient of each sorted monomial); `x → p` uses the defining sum
//! `x_λ = Σ_{σ ≤ ⟦λ⟧} μ(σ, ⟦λ⟧) p_{λ(σ)}`. Everything else is a matrix
//! inverse or product over ℚ. Tables are built once per degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::basis::Basis;
use crate::error::Result;
use crate::lattice::{mobius_unchecked, refinements};
use crate::oracle::{expand_c, CPolynomial, CWord, MAX_VARIABLES};
use crate::partitions::{bracket, integer_partitions, IntegerPartition};
use crate::Rational;

type Matrix = Vec<Vec<Rational>>;

/// A sparse combination of one Sym basis, keyed by integer partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymExpr {
    basis: Basis,
    terms: HashMap<IntegerPartition, Rational>,
}

impl SymExpr {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: HashMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, IntegerPartition::empty())
    }

    pub fn basis_element(basis: Basis, lambda: IntegerPartition) -> Self {
        let mut out = Self::zero(basis);
        out.add_term(lambda, Rational::one());
        out
    }

    pub fn from_terms(
        basis: Basis,
        terms: impl IntoIterator<Item = (IntegerPartition, Rational)>,
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

    pub fn coefficient(&self, lambda: &IntegerPartition) -> Rational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(&IntegerPartition, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, lambda: IntegerPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(lambda.clone())
            .or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn scale(&self, c: &Rational) -> SymExpr {
        SymExpr::from_terms(
            self.basis,
            self.terms.iter().map(|(k, v)| (k.clone(), v * c)),
        )
    }

    /// Sum, re-expressing `other` in the basis of `self` first.
    pub fn add(&self, other: &SymExpr) -> SymExpr {
        let other = other.convert(self.basis);
        let mut out = self.clone();
        for (k, v) in other.terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &SymExpr) -> SymExpr {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Equality as symmetric functions, regardless of basis.
    pub fn same_element(&self, other: &SymExpr) -> bool {
        self.sub(other).is_zero()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(IntegerPartition::size)
            .max()
            .unwrap_or(0)
    }

    pub fn convert(&self, target: Basis) -> SymExpr {
        convert_sym(self, target)
    }

    pub fn product(&self, other: &SymExpr) -> SymExpr {
        product_sym(self, other)
    }

    pub fn omega(&self) -> SymExpr {
        omega_sym(self)
    }

    /// Truncated expansion in `k` commuting variables.
    pub fn to_polynomial(&self, k: u8) -> Result<CPolynomial> {
        let mut out = CPolynomial::zero(k);
        for (lambda, c) in &self.terms {
            out.add_scaled(&expand_c(self.basis, lambda, k)?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Rational)> = self
            .terms()
            .into_iter()
            .map(|(k, c)| (format!("{}{{{k}}}", self.basis.letter()), c.clone()))
            .collect();
        f.write_str(&crate::text::render_terms(&terms))
    }
}

struct DegreeTables {
    index: HashMap<IntegerPartition, usize>,
    parts: Vec<IntegerPartition>,
    /// Row `i` expresses `b_{parts[i]}` in the `p` basis.
    to_p: HashMap<Basis, Matrix>,
    /// Row `i` expresses `p_{parts[i]}` in basis `b`.
    from_p: HashMap<Basis, Matrix>,
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse over ℚ. Every table here is a change of basis, so
/// singularity is a bug.
fn invert(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("change-of-basis matrix is singular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &f * x;
                    inv[r][j] -= &f * y;
                }
            }
        }
    }
    inv
}

/// Coefficient of `m_μ` in a symmetric polynomial: the coefficient of
/// `x₁^μ₁ x₂^μ₂ ⋯`.
fn monomial_coefficients(poly: &CPolynomial, parts: &[IntegerPartition], k: u8) -> Vec<Rational> {
    parts
        .iter()
        .map(|mu| {
            let mut e = vec![0u8; k as usize];
            for (i, &p) in mu.parts().iter().enumerate() {
                e[i] = p as u8;
            }
            poly.coefficient(&CWord::new(e))
        })
        .collect()
}

fn build_tables(n: u32) -> DegreeTables {
    assert!(
        n <= MAX_VARIABLES as u32,
        "Sym tables are limited to degree {MAX_VARIABLES}"
    );
    let parts = integer_partitions(n);
    let index = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let k = n.max(1) as u8;
    let p_to_m: Matrix = parts
        .iter()
        .map(|l| monomial_coefficients(&expand_c(Basis::P, l, k).unwrap(), &parts, k))
        .collect();
    let e_to_m: Matrix = parts
        .iter()
        .map(|l| monomial_coefficients(&expand_c(Basis::E, l, k).unwrap(), &parts, k))
        .collect();
    let m_to_p = invert(&p_to_m);
    let e_to_p = mat_mul(&e_to_m, &m_to_p);
    let x_to_p: Matrix = parts
        .iter()
        .map(|l| {
            let top = bracket(l);
            let mut row = vec![Rational::zero(); parts.len()];
            for sigma in refinements(&top) {
                let j = parts.iter().position(|p| *p == sigma.shape()).unwrap();
                row[j] += Rational::from_integer(mobius_unchecked(&sigma, &top));
            }
            row
        })
        .collect();
    let mut to_p = HashMap::new();
    to_p.insert(Basis::P, identity(parts.len()));
    to_p.insert(Basis::M, m_to_p);
    to_p.insert(Basis::E, e_to_p);
    to_p.insert(Basis::X, x_to_p);
    let mut from_p = HashMap::new();
    from_p.insert(Basis::P, identity(parts.len()));
    from_p.insert(Basis::M, p_to_m);
    from_p.insert(Basis::E, invert(&to_p[&Basis::E]));
    from_p.insert(Basis::X, invert(&to_p[&Basis::X]));
    DegreeTables {
        index,
        parts,
        to_p,
        from_p,
    }
}

fn tables(n: u32) -> Arc<DegreeTables> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return t.clone();
    }
    let built = Arc::new(build_tables(n));
    cache.write().unwrap().entry(n).or_insert(built).clone()
}

/// Matrix whose row `i` expresses `from_{λᵢ}` in the `to` basis, with rows
/// and columns indexed by [`integer_partitions`]`(n)`.
pub fn conversion_matrix(from: Basis, to: Basis, n: u32) -> Vec<Vec<Rational>> {
    let t = tables(n);
    mat_mul(&t.to_p[&from], &t.from_p[&to])
}

pub fn convert_sym(expr: &SymExpr, target: Basis) -> SymExpr {
    if expr.basis == target {
        return expr.clone();
    }
    let mut out = SymExpr::zero(target);
    for (lambda, c) in &expr.terms {
        let t = tables(lambda.size());
        let row = &t.to_p[&expr.basis][t.index[lambda]];
        let from = &t.from_p[&target];
        for (j, pj) in row.iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            for (i, v) in from[j].iter().enumerate() {
                if !v.is_zero() {
                    out.add_term(t.parts[i].clone(), c * pj * v);
                }
            }
        }
    }
    out
}

/// Product; `p`, `e` and `x` are multiplicative, `m` goes through `p`.
pub fn product_sym(a: &SymExpr, b: &SymExpr) -> SymExpr {
    let b = b.convert(a.basis);
    if a.basis == Basis::M {
        let pa = a.convert(Basis::P);
        let pb = b.convert(Basis::P);
        return product_sym(&pa, &pb).convert(Basis::M);
    }
    let mut out = SymExpr::zero(a.basis);
    for (l, x) in &a.terms {
        for (g, y) in &b.terms {
            out.add_term(l.concat(g), x * y);
        }
    }
    out
}

/// `ω(p_λ) = (-1)^(|λ| - ℓ(λ)) p_λ`.
pub fn omega_sym(expr: &SymExpr) -> SymExpr {
    let p = expr.convert(Basis::P);
    let scaled = SymExpr::from_terms(
        Basis::P,
        p.terms.iter().map(|(l, c)| {
            let odd = (l.size() as usize - l.len()) % 2 == 1;
            (l.clone(), if odd { -c } else { c.clone() })
        }),
    );
    scaled.convert(expr.basis)
}

/// Outcome of an `e`-positivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPositivity {
    pub positive: bool,
    /// First non-positive `e` coefficient in canonical order, if any.
    pub witness: Option<(IntegerPartition, Rational)>,
}

pub fn is_e_positive(expr: &SymExpr) -> EPositivity {
    let e = expr.convert(Basis::E);
    let witness = e
        .terms()
        .into_iter()
        .find(|(_, c)| !c.is_positive())
        .map(|(l, c)| (l.clone(), c.clone()));
    EPositivity {
        positive: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ip(parts: &[u32]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    fn expr(basis: Basis, terms: &[(&[u32], i64)]) -> SymExpr {
        SymExpr::from_terms(basis, terms.iter().map(|(l, c)| (ip(l), rat(*c))))
    }

    #[test]
    fn x2_in_p_and_e() {
        let x2 = SymExpr::basis_element(Basis::X, ip(&[2]));
        assert_eq!(
            x2.convert(Basis::P),
            expr(Basis::P, &[(&[2], 1), (&[1, 1], -1)])
        );
        assert_eq!(x2.convert(Basis::E), expr(Basis::E, &[(&[2], -2)]));
        let verdict = is_e_positive(&x2);
        assert!(!verdict.positive);
        assert_eq!(verdict.witness, Some((ip(&[2]), rat(-2))));
        assert!(is_e_positive(&SymExpr::basis_element(Basis::X, ip(&[1]))).positive);
        assert!(is_e_positive(&expr(Basis::E, &[(&[2, 1], 1)])).positive);
    }

    #[test]
    fn p21_in_m() {
        // (x₁²+x₂²+⋯)(x₁+x₂+⋯) = m_3 + m_21
        let p21 = SymExpr::basis_element(Basis::P, ip(&[2, 1]));
        assert_eq!(
            p21.convert(Basis::M),
            expr(Basis::M, &[(&[3], 1), (&[2, 1], 1)])
        );
        assert_eq!(p21.convert(Basis::P), p21);
    }

    #[test]
    fn products() {
        let b = SymExpr::basis_element(Basis::X, ip(&[2, 2, 1]));
        let a = SymExpr::basis_element(Basis::X, ip(&[3, 2, 2, 1]));
        assert_eq!(
            a.product(&b),
            SymExpr::basis_element(Basis::X, ip(&[3, 2, 2, 2, 2, 1, 1]))
        );
        let a = SymExpr::basis_element(Basis::X, ip(&[3, 2, 1, 1]));
        assert_eq!(
            a.product(&b),
            SymExpr::basis_element(Basis::X, ip(&[3, 2, 2, 2, 1, 1, 1]))
        );
        let e2 = SymExpr::basis_element(Basis::E, ip(&[2]));
        let e1 = SymExpr::basis_element(Basis::E, ip(&[1]));
        assert_eq!(
            e2.product(&e1),
            SymExpr::basis_element(Basis::E, ip(&[2, 1]))
        );
        assert_eq!(SymExpr::one(Basis::E).product(&e2), e2);
        // m_1 · m_1 = 2 m_11 + m_2
        let m1 = SymExpr::basis_element(Basis::M, ip(&[1]));
        assert_eq!(m1.product(&m1), expr(Basis::M, &[(&[2], 1), (&[1, 1], 2)]));
    }

    #[test]
    fn omega_examples() {
        let p21 = SymExpr::basis_element(Basis::P, ip(&[2, 1]));
        assert_eq!(p21.omega(), p21.scale(&rat(-1)));
        for n in 0..=5 {
            for l in integer_partitions(n) {
                for b in Basis::ALL {
                    let v = SymExpr::basis_element(b, l.clone());
                    assert_eq!(v.omega().omega(), v);
                }
                // ω(e_λ) = h_λ, and ω(m_1^n) stays within the ring; check ω(e_n) against p-route
            }
        }
    }

    #[test]
    fn conversions_round_trip_and_match_oracle() {
        for n in 0..=6 {
            let k = n.max(1) as u8;
            for l in integer_partitions(n) {
                for from in Basis::ALL {
                    let v = SymExpr::basis_element(from, l.clone());
                    let poly = if n <= 4 {
                        Some(v.to_polynomial(k).unwrap())
                    } else {
                        None
                    };
                    for to in Basis::ALL {
                        let w = v.convert(to);
                        assert_eq!(w.convert(from), v);
                        if let Some(p) = &poly {
                            assert_eq!(&w.to_polynomial(k).unwrap(), p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn x_basis_is_unitriangular_over_p() {
        for n in 1..=7 {
            let parts = integer_partitions(n);
            let m = conversion_matrix(Basis::X, Basis::P, n);
            for (i, row) in m.iter().enumerate() {
                assert_eq!(row[i], Rational::one());
                // only finer shapes (more parts) appear off the diagonal
                for (j, c) in row.iter().enumerate() {
                    if j != i && !c.is_zero() {
                        assert!(parts[j].len() > parts[i].len());
                    }
                }
            }
        }
    }

    #[test]
    fn display() {
        let v = expr(Basis::P, &[(&[2], 1), (&[1, 1], -1)]);
        assert_eq!(v.to_string(), "1*p{2} - 1*p{1,1}");
        assert_eq!(SymExpr::zero(Basis::P).to_string(), "0");
        assert_eq!(SymExpr::one(Basis::X).to_string(), "1*x{()}");
    }
}
