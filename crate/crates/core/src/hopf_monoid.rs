//! The Hopf monoid `Π` of set partitions, materialised at concrete finite
//! ground sets, and the Fock functor taking it to NCSym.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::basis::Basis;
use crate::error::{domain, Result};
use crate::lattice::{coarsenings, interval_unchecked, mobius_unchecked, refinements, refines};
use crate::ncsym::{NCSymExpr, NCTensorExpr};
use crate::partitions::SetPartition;
use crate::text::{braced, render_terms};
use crate::Rational;

/// Bases of `Π` defined at the species level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpeciesBasis {
    M,
    P,
    X,
}

impl SpeciesBasis {
    pub const ALL: [SpeciesBasis; 3] = [SpeciesBasis::M, SpeciesBasis::P, SpeciesBasis::X];

    pub fn to_basis(self) -> Basis {
        match self {
            SpeciesBasis::M => Basis::M,
            SpeciesBasis::P => Basis::P,
            SpeciesBasis::X => Basis::X,
        }
    }

    /// `None` for `e`, which has no species-level counterpart.
    pub fn from_basis(b: Basis) -> Option<SpeciesBasis> {
        match b {
            Basis::M => Some(SpeciesBasis::M),
            Basis::P => Some(SpeciesBasis::P),
            Basis::X => Some(SpeciesBasis::X),
            Basis::E => None,
        }
    }
}

impl fmt::Display for SpeciesBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_basis())
    }
}

fn sorted_set(s: &[u32]) -> Result<Vec<u32>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return domain("repeated element in a ground set");
    }
    if v.first() == Some(&0) {
        return domain("ground set elements must be positive integers");
    }
    Ok(v)
}

/// An element of `Π[S]` in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpeciesElement {
    ground: Vec<u32>,
    basis: SpeciesBasis,
    terms: HashMap<SetPartition, Rational>,
}

impl SpeciesElement {
    pub fn zero(ground: &[u32], basis: SpeciesBasis) -> Result<Self> {
        Ok(Self {
            ground: sorted_set(ground)?,
            basis,
            terms: HashMap::new(),
        })
    }

    pub fn basis_element(basis: SpeciesBasis, a: SetPartition) -> Self {
        let mut terms = HashMap::new();
        let ground = a.ground();
        terms.insert(a, Rational::one());
        Self {
            ground,
            basis,
            terms,
        }
    }

    pub fn from_terms(
        ground: &[u32],
        basis: SpeciesBasis,
        terms: impl IntoIterator<Item = (SetPartition, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ground, basis)?;
        for (a, c) in terms {
            if a.ground() != out.ground {
                return domain(format!("{a} does not partition the ground set"));
            }
            out.add_term(a, c);
        }
        Ok(out)
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn basis(&self) -> SpeciesBasis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &SetPartition) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> Vec<(&SetPartition, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn add_term(&mut self, a: SetPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    /// Change of basis inside `Π[S]`, through `p`:
    /// `p_A = Σ_{B ≥ A} m_B`, `p_A = Σ_{B ≤ A} x_B` and their Möbius inverses.
    pub fn convert(&self, target: SpeciesBasis) -> SpeciesElement {
        if target == self.basis {
            return self.clone();
        }
        let mut p = SpeciesElement {
            ground: self.ground.clone(),
            basis: SpeciesBasis::P,
            terms: HashMap::new(),
        };
        for (a, c) in &self.terms {
            match self.basis {
                SpeciesBasis::P => p.add_term(a.clone(), c.clone()),
                SpeciesBasis::M => {
                    for b in coarsenings(a) {
                        let mu = Rational::from_integer(mobius_unchecked(a, &b));
                        p.add_term(b, c * mu);
                    }
                }
                SpeciesBasis::X => {
                    for b in refinements(a) {
                        let mu = Rational::from_integer(mobius_unchecked(&b, a));
                        p.add_term(b, c * mu);
                    }
                }
            }
        }
        let mut out = SpeciesElement {
            ground: self.ground.clone(),
            basis: target,
            terms: HashMap::new(),
        };
        for (a, c) in &p.terms {
            let related = match target {
                SpeciesBasis::P => vec![a.clone()],
                SpeciesBasis::M => coarsenings(a),
                SpeciesBasis::X => refinements(a),
            };
            for b in related {
                out.add_term(b, c.clone());
            }
        }
        out
    }

    /// Sum of two elements on the same ground set; `other` is converted to
    /// the basis of `self`.
    pub fn add(&self, other: &SpeciesElement) -> Result<SpeciesElement> {
        if self.ground != other.ground {
            return domain("cannot add elements on different ground sets");
        }
        let mut out = self.clone();
        for (a, c) in other.convert(self.basis).terms {
            out.add_term(a, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SpeciesElement {
        let mut out = SpeciesElement {
            ground: self.ground.clone(),
            basis: self.basis,
            terms: HashMap::new(),
        };
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    /// The class in `𝒦(Π) ≅ NCSym`; the ground set must be `[n]`.
    pub fn to_ncsym(&self) -> Result<NCSymExpr> {
        if !is_initial_segment(&self.ground) {
            return domain("only elements on [n] map into NCSym");
        }
        Ok(NCSymExpr::from_terms(
            self.basis.to_basis(),
            self.terms.iter().map(|(a, c)| (a.clone(), c.clone())),
        ))
    }

    /// The degree-`n` part of an NCSym expression as an element of `Π[[n]]`.
    pub fn from_ncsym(expr: &NCSymExpr, n: u32) -> Result<SpeciesElement> {
        let Some(basis) = SpeciesBasis::from_basis(expr.basis()) else {
            return domain("the e basis is not defined at species level");
        };
        let ground: Vec<u32> = (1..=n).collect();
        let terms = expr
            .terms()
            .into_iter()
            .filter(|(a, _)| a.size() == n as usize)
            .map(|(a, c)| (a.clone(), c.clone()));
        SpeciesElement::from_terms(&ground, basis, terms)
    }
}

impl fmt::Display for SpeciesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Rational)> = self
            .terms()
            .into_iter()
            .map(|(a, c)| (format!("{}{}", self.basis, braced(a)), c.clone()))
            .collect();
        f.write_str(&render_terms(&terms))
    }
}

fn is_initial_segment(g: &[u32]) -> bool {
    g.iter().enumerate().all(|(i, &e)| e == i as u32 + 1)
}

/// An element of `Π[S₁] ⊗ Π[S₂]`, one basis on both legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpeciesTensor {
    basis: SpeciesBasis,
    left_ground: Vec<u32>,
    right_ground: Vec<u32>,
    terms: HashMap<(SetPartition, SetPartition), Rational>,
}

impl SpeciesTensor {
    pub fn zero(basis: SpeciesBasis, s1: &[u32], s2: &[u32]) -> Result<Self> {
        Ok(Self {
            basis,
            left_ground: sorted_set(s1)?,
            right_ground: sorted_set(s2)?,
            terms: HashMap::new(),
        })
    }

    pub fn basis(&self) -> SpeciesBasis {
        self.basis
    }

    pub fn left_ground(&self) -> &[u32] {
        &self.left_ground
    }

    pub fn right_ground(&self) -> &[u32] {
        &self.right_ground
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: &SetPartition, c: &SetPartition) -> Rational {
        self.terms
            .get(&(b.clone(), c.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> Vec<(&(SetPartition, SetPartition), &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, b: SetPartition, c: SetPartition, v: Rational) {
        if v.is_zero() {
            return;
        }
        let key = (b, c);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Change of basis applied to both legs.
    pub fn convert(&self, target: SpeciesBasis) -> SpeciesTensor {
        let mut out = SpeciesTensor {
            basis: target,
            left_ground: self.left_ground.clone(),
            right_ground: self.right_ground.clone(),
            terms: HashMap::new(),
        };
        for ((b, c), v) in &self.terms {
            let l = SpeciesElement::basis_element(self.basis, b.clone()).convert(target);
            let r = SpeciesElement::basis_element(self.basis, c.clone()).convert(target);
            for (lb, lc) in &l.terms {
                for (rb, rc) in &r.terms {
                    out.add_term(lb.clone(), rb.clone(), v * lc * rc);
                }
            }
        }
        out
    }
}

impl fmt::Display for SpeciesTensor {
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
            .map(|((b, c), v)| (format!("{} (x) {}", leg(b), leg(c)), v.clone()))
            .collect();
        f.write_str(&render_terms(&terms))
    }
}

/// `Π[f]`: relabels every key through the bijection `f : S → T`.
pub fn relabel(f: &BTreeMap<u32, u32>, v: &SpeciesElement) -> Result<SpeciesElement> {
    let dom: Vec<u32> = f.keys().copied().collect();
    if dom != v.ground {
        return domain("relabelling map must have the ground set as its domain");
    }
    let image = sorted_set(&f.values().copied().collect::<Vec<_>>())?;
    let mut out = SpeciesElement {
        ground: image,
        basis: v.basis,
        terms: HashMap::new(),
    };
    for (a, c) in &v.terms {
        out.add_term(a.map_elements(|e| f[&e]), c.clone());
    }
    Ok(out)
}

fn check_decomposition(s1: &[u32], s2: &[u32], ground: Option<&[u32]>) -> Result<()> {
    let mut all = sorted_set(s1)?;
    all.extend(sorted_set(s2)?);
    let union = sorted_set(&all).map_err(|_| {
        crate::Error::Domain("the two sets of a decomposition must be disjoint".into())
    })?;
    if let Some(g) = ground {
        if union != g {
            return domain("S₁ ⊔ S₂ must equal the ground set");
        }
    }
    Ok(())
}

/// Every `C ⊢ A ⊔ B` with `C|_{S₁} = A` and `C|_{S₂} = B`: each block of `A`
/// is either kept or merged with a distinct block of `B`.
fn quasi_shuffles(a: &SetPartition, b: &SetPartition) -> Vec<SetPartition> {
    fn go(
        a: &[Vec<u32>],
        b: &[Vec<u32>],
        used: &mut Vec<bool>,
        acc: &mut Vec<Vec<u32>>,
        out: &mut Vec<SetPartition>,
    ) {
        let Some((first, rest)) = a.split_first() else {
            let mut blocks = acc.clone();
            blocks.extend(
                b.iter()
                    .zip(used.iter())
                    .filter(|(_, &u)| !u)
                    .map(|(blk, _)| blk.clone()),
            );
            out.push(SetPartition::canonical(blocks));
            return;
        };
        acc.push(first.clone());
        go(rest, b, used, acc, out);
        acc.pop();
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            let mut merged = first.clone();
            merged.extend_from_slice(&b[j]);
            acc.push(merged);
            go(rest, b, used, acc, out);
            acc.pop();
            used[j] = false;
        }
    }
    let mut out = Vec::new();
    go(
        a.blocks(),
        b.blocks(),
        &mut vec![false; b.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// `μ_{S₁,S₂} : Π[S₁] ⊗ Π[S₂] → Π[S₁ ⊔ S₂]`.
pub fn species_mu(
    s1: &[u32],
    s2: &[u32],
    a: &SpeciesElement,
    b: &SpeciesElement,
) -> Result<SpeciesElement> {
    check_decomposition(s1, s2, None)?;
    if sorted_set(s1)? != a.ground || sorted_set(s2)? != b.ground {
        return domain("operand ground sets do not match the decomposition");
    }
    if a.basis != b.basis {
        return domain("species product needs both operands in one basis");
    }
    let mut ground = a.ground.clone();
    ground.extend_from_slice(&b.ground);
    ground.sort_unstable();
    let mut out = SpeciesElement {
        ground,
        basis: a.basis,
        terms: HashMap::new(),
    };
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let c = ca * cb;
            match a.basis {
                SpeciesBasis::M => {
                    for k in quasi_shuffles(ka, kb) {
                        out.add_term(k, c.clone());
                    }
                }
                SpeciesBasis::P | SpeciesBasis::X => {
                    let mut blocks = ka.blocks().to_vec();
                    blocks.extend(kb.blocks().iter().cloned());
                    out.add_term(SetPartition::canonical(blocks), c);
                }
            }
        }
    }
    Ok(out)
}

/// `Δ_{S₁,S₂} : Π[S] → Π[S₁] ⊗ Π[S₂]`.
pub fn species_delta(s1: &[u32], s2: &[u32], v: &SpeciesElement) -> Result<SpeciesTensor> {
    check_decomposition(s1, s2, Some(&v.ground))?;
    let mut out = SpeciesTensor::zero(v.basis, s1, s2)?;
    for (a, c) in &v.terms {
        match v.basis {
            SpeciesBasis::M | SpeciesBasis::P => {
                if a.respects_split(s1) {
                    out.add_term(
                        a.restrict_unchecked(s1),
                        a.restrict_unchecked(s2),
                        c.clone(),
                    );
                }
            }
            SpeciesBasis::X => {
                for ((b, cc), coeff) in x_delta_coefficients(a, s1, s2) {
                    out.add_term(b, cc, c * coeff);
                }
            }
        }
    }
    Ok(out)
}

/// All nonzero `c_{B,C}` for `Δ_{S₁,S₂}(x_A)`. Each split-respecting
/// `D = D₁ ⊔ D₂ ≤ A` contributes `μ(D, A)` to every `(B, C)` below `(D₁, D₂)`.
fn x_delta_coefficients(
    a: &SetPartition,
    s1: &[u32],
    s2: &[u32],
) -> HashMap<(SetPartition, SetPartition), Rational> {
    let left = refinements(&a.restrict_unchecked(s1));
    let right = refinements(&a.restrict_unchecked(s2));
    let mut weight: HashMap<(usize, usize), Rational> = HashMap::new();
    for (i, d1) in left.iter().enumerate() {
        for (j, d2) in right.iter().enumerate() {
            let mut blocks = d1.blocks().to_vec();
            blocks.extend(d2.blocks().iter().cloned());
            let d = SetPartition::canonical(blocks);
            weight.insert((i, j), Rational::from_integer(mobius_unchecked(&d, a)));
        }
    }
    // below[i] lists the indices of the refinements of left[i]
    let below = |list: &[SetPartition]| -> Vec<Vec<usize>> {
        list.iter()
            .map(|d| (0..list.len()).filter(|&k| refines(&list[k], d)).collect())
            .collect()
    };
    let below_left = below(&left);
    let below_right = below(&right);
    let mut out: HashMap<(SetPartition, SetPartition), Rational> = HashMap::new();
    for ((i, j), w) in weight {
        if w.is_zero() {
            continue;
        }
        for &bi in &below_left[i] {
            for &cj in &below_right[j] {
                *out.entry((left[bi].clone(), right[cj].clone()))
                    .or_insert_with(Rational::zero) += &w;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `c_{B,C} = Σ μ(D, A)` over `D = D|_{S₁} ⊔ D|_{S₂} ≤ A` with
/// `B ≤ D|_{S₁}` and `C ≤ D|_{S₂}`.
pub fn c_coefficient(
    a: &SetPartition,
    s1: &[u32],
    s2: &[u32],
    b: &SetPartition,
    c: &SetPartition,
) -> Result<Rational> {
    let ground = a.ground();
    check_decomposition(s1, s2, Some(&ground))?;
    if b.ground() != sorted_set(s1)? || c.ground() != sorted_set(s2)? {
        return domain("B and C must partition S₁ and S₂");
    }
    let a1 = a.restrict_unchecked(s1);
    let a2 = a.restrict_unchecked(s2);
    if !refines(b, &a1) || !refines(c, &a2) {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for d1 in interval_unchecked(b, &a1) {
        for d2 in interval_unchecked(c, &a2) {
            let mut blocks = d1.blocks().to_vec();
            blocks.extend(d2.blocks().iter().cloned());
            let d = SetPartition::canonical(blocks);
            total += Rational::from_integer(mobius_unchecked(&d, a));
        }
    }
    Ok(total)
}

fn shift(w: &SpeciesElement, n: u32) -> SpeciesElement {
    let f: BTreeMap<u32, u32> = w.ground.iter().map(|&e| (e, e + n)).collect();
    relabel(&f, w).expect("shift is a bijection on the ground set")
}

/// The Fock product `μ_{[n],[n+1,n+m]}(v ⊗ Π[shift](w))`.
pub fn fock_product(v: &SpeciesElement, w: &SpeciesElement) -> Result<SpeciesElement> {
    if !is_initial_segment(&v.ground) || !is_initial_segment(&w.ground) {
        return domain("Fock product needs ground sets [n] and [m]");
    }
    let n = v.ground.len() as u32;
    let shifted = shift(w, n);
    species_mu(&v.ground, &shifted.ground, v, &shifted)
}

/// The Fock coproduct: `Σ_{[n] = S₁ ⊔ S₂} (Π[St] ⊗ Π[St]) Δ_{S₁,S₂}(v)`.
pub fn fock_coproduct(v: &SpeciesElement) -> Result<NCTensorExpr> {
    if !is_initial_segment(&v.ground) {
        return domain("Fock coproduct needs ground set [n]");
    }
    let n = v.ground.len();
    if n >= 32 {
        return domain("ground set too large for the Fock coproduct");
    }
    let mut out = NCTensorExpr::zero(v.basis.to_basis());
    for mask in 0u32..(1u32 << n) {
        let (s1, s2): (Vec<u32>, Vec<u32>) =
            v.ground.iter().partition(|&&e| mask >> (e - 1) & 1 == 1);
        let part = species_delta(&s1, &s2, v)?;
        for ((b, c), coeff) in part.terms {
            out.add_term(b.standardize(), c.standardize(), coeff);
        }
    }
    Ok(out)
}
