//! Property suites run by `ncsym check` and `ncsym verify`.
//!
//! Every property is checked exhaustively up to a degree bound derived from
//! `max_n`; the heavier ones clamp that bound (see [`Suite::describe`]). The
//! only randomness is the choice of relabelling bijections in the naturality
//! checks, which is driven by `seed`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::graphs::{count_acyclic_unique_sink, SinkCountBackend};
use crate::hopf_monoid::{
    fock_coproduct, fock_product, relabel, species_delta, species_mu, SpeciesBasis, SpeciesElement,
    SpeciesTensor,
};
use crate::lattice::{enumerate, enumerate_n, interval, is_refinement, join, meet, mobius};
use crate::ncsym::{
    coproduct_left, coproduct_right, coproduct_via_p, lift_r, omega, permute, rho,
    x_coproduct_coefficient, x_to_m_top, x_to_m_top_with, x_top_coproduct_coefficient, NCSymExpr,
};
use crate::oracle::{commute, expand_c, expand_nc, symmetrize_r, NCPolynomial};
use crate::partitions::{integer_partitions, Permutation, SetPartition};
use crate::sym::{conversion_matrix, is_e_positive, SymExpr};
use crate::{factorial, signed_factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Mobius,
    Lattice,
    Bases,
    HopfAxioms,
    CoproductX,
    XToM,
    Omega,
    Fock,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Mobius,
        Suite::Lattice,
        Suite::Bases,
        Suite::HopfAxioms,
        Suite::CoproductX,
        Suite::XToM,
        Suite::Omega,
        Suite::Fock,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Mobius => "mobius",
            Suite::Lattice => "lattice",
            Suite::Bases => "bases",
            Suite::HopfAxioms => "hopf-axioms",
            Suite::CoproductX => "coproduct-x",
            Suite::XToM => "x-to-m",
            Suite::Omega => "omega",
            Suite::Fock => "fock",
            Suite::Oracle => "oracle",
        }
    }

    /// One line on what the suite covers and how `max_n` is clamped.
    pub fn describe(self) -> &'static str {
        match self {
            Suite::Mobius => "closed-form Möbius values satisfy the defining recursion (n ≤ min(N, 6))",
            Suite::Lattice => "Bell counts, interval sizes and meet/join laws (laws at n ≤ min(N, 4))",
            Suite::Bases => "change of basis in NCSym and Sym, ρ, R and the x_⟦n⟧ closed forms (n ≤ min(N, 6))",
            Suite::HopfAxioms => "coassociativity, bialgebra, unit and the species laws (degree ≤ min(N, 5), compatibility at |S| ≤ min(N, 4))",
            Suite::CoproductX => "closed-form x coproduct coefficients against the p route (n ≤ min(N, 5))",
            Suite::XToM => "acyclic-orientation expansion of x_⟦n⟧ against Möbius inversion (n ≤ min(N, 6))",
            Suite::Omega => "ω is an involutive algebra map and its action on x (n ≤ min(N, 6))",
            Suite::Fock => "Fock product and coproduct against NCSym (degree ≤ min(N, 5))",
            Suite::Oracle => "truncated polynomial expansions certify the algebra (n ≤ min(N, 4), k = 4)",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown suite `{s}`"),
            })
    }
}

/// `all` or a single suite name.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: Suite,
    pub property: String,
    pub cases: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_n: u32,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_n: 5,
            seed: 0x5eed,
        }
    }
}

struct Property {
    suite: Suite,
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Property {
    fn new(suite: Suite, name: &'static str) -> Self {
        Self {
            suite,
            name,
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn done(self) -> PropertyResult {
        PropertyResult {
            suite: self.suite,
            property: self.name.to_string(),
            cases: self.cases,
            failure: self.failure,
        }
    }
}

pub fn run(suite: Suite, cfg: &Config) -> Vec<PropertyResult> {
    match suite {
        Suite::Mobius => mobius_suite(cfg),
        Suite::Lattice => lattice_suite(cfg),
        Suite::Bases => bases_suite(cfg),
        Suite::HopfAxioms => hopf_suite(cfg),
        Suite::CoproductX => coproduct_x_suite(cfg),
        Suite::XToM => x_to_m_suite(cfg),
        Suite::Omega => omega_suite(cfg),
        Suite::Fock => fock_suite(cfg),
        Suite::Oracle => oracle_suite(cfg),
    }
}

pub fn run_all(suites: &[Suite], cfg: &Config) -> Vec<PropertyResult> {
    suites.iter().flat_map(|&s| run(s, cfg)).collect()
}

fn iv(lower: &SetPartition, upper: &SetPartition) -> Vec<SetPartition> {
    interval(lower, upper).expect("comparable partitions")
}

fn mu(b: &SetPartition, a: &SetPartition) -> BigInt {
    mobius(b, a).expect("comparable partitions")
}

fn refines(b: &SetPartition, a: &SetPartition) -> bool {
    is_refinement(b, a).unwrap_or(false)
}

fn mapped(p: &SetPartition, f: &BTreeMap<u32, u32>) -> SetPartition {
    let blocks = p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|e| f[e]).collect())
        .collect();
    SetPartition::from_blocks(blocks).expect("bijective relabelling")
}

/// Every standard set partition of size at most `n`.
fn partitions_up_to(n: u32) -> Vec<SetPartition> {
    (0..=n).flat_map(enumerate_n).collect()
}

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Bell numbers from the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let x = next.last().unwrap() + v;
            next.push(x);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(n + 1);
    out
}

fn mobius_suite(cfg: &Config) -> Vec<PropertyResult> {
    let cap = cfg.max_n.min(6);
    let mut rec = Property::new(
        Suite::Mobius,
        "μ(A, A) = 1 and Σ_{B ≤ C ≤ A} μ(C, A) = 0 for B < A",
    );
    for n in 0..=cap {
        for a in enumerate_n(n) {
            for b in iv(&SetPartition::bottom(n), &a) {
                let total: BigInt = iv(&b, &a).iter().map(|c| mu(c, &a)).sum();
                let want = if b == a {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                rec.check(total == want, || format!("B = {b}, A = {a}: sum {total}"));
            }
        }
    }
    let mut top = Property::new(Suite::Mobius, "μ(π, ⟦n⟧) = (-1)^(ℓ-1) (ℓ-1)!");
    for n in 1..=cap {
        let t = SetPartition::top(n);
        for pi in enumerate_n(n) {
            top.check(mu(&pi, &t) == signed_factorial(pi.len()), || pi.to_string());
        }
    }
    vec![rec.done(), top.done()]
}

fn lattice_suite(cfg: &Config) -> Vec<PropertyResult> {
    let mut bell = Property::new(Suite::Lattice, "|Π[n]| is the Bell number");
    let bells = bell_numbers(cfg.max_n as usize);
    for n in 0..=cfg.max_n {
        let count = enumerate_n(n).count();
        bell.check(BigInt::from(count) == bells[n as usize], || {
            format!("n = {n}: {count} partitions")
        });
    }
    let cap = cfg.max_n.min(4);
    let mut sizes = Property::new(
        Suite::Lattice,
        "|[B, A]| = Π Bell(blocks of B inside each block of A)",
    );
    let mut laws = Property::new(
        Suite::Lattice,
        "meet and join are greatest lower and least upper bounds",
    );
    for n in 0..=cap {
        let all: Vec<SetPartition> = enumerate_n(n).collect();
        for a in &all {
            for b in &all {
                if refines(b, a) {
                    let counts = a
                        .blocks()
                        .iter()
                        .map(|blk| b.blocks().iter().filter(|x| blk.contains(&x[0])).count());
                    let want: BigInt = counts.map(bells_small).product();
                    let got = iv(b, a).len();
                    sizes.check(BigInt::from(got) == want, || format!("[{b}, {a}]"));
                }
                let m = meet(a, b).unwrap();
                let j = join(a, b).unwrap();
                let ok = refines(&m, a)
                    && refines(&m, b)
                    && refines(a, &j)
                    && refines(b, &j)
                    && all.iter().all(|c| {
                        (!(refines(c, a) && refines(c, b)) || refines(c, &m))
                            && (!(refines(a, c) && refines(b, c)) || refines(&j, c))
                    });
                laws.check(ok, || format!("{a}, {b}"));
            }
        }
    }
    vec![bell.done(), sizes.done(), laws.done()]
}

fn bells_small(k: usize) -> BigInt {
    bell_numbers(k)[k].clone()
}

fn bases_suite(cfg: &Config) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    let cap5 = cfg.max_n.min(5);
    let cap6 = cfg.max_n.min(6);

    let mut trip = Property::new(Suite::Bases, "convert(convert(b_π, b₂), b₁) = b_π");
    for n in 0..=cap5 {
        for pi in enumerate_n(n) {
            for from in Basis::ALL {
                let v = NCSymExpr::basis_element(from, pi.clone());
                for to in Basis::ALL {
                    trip.check(v.convert(to).convert(from) == v, || {
                        format!("{from}{{{pi}}} via {to}")
                    });
                }
            }
        }
    }
    out.push(trip.done());

    let mut oracle = Property::new(Suite::Bases, "oracle expansions agree with convert (k = n)");
    for n in 0..=cfg.max_n.min(4) {
        let k = n.max(1) as u8;
        for pi in enumerate_n(n) {
            for from in Basis::ALL {
                let want = expand_nc(from, &pi, k).unwrap();
                for to in Basis::ALL {
                    let got = NCSymExpr::basis_element(from, pi.clone())
                        .convert(to)
                        .to_polynomial(k)
                        .unwrap();
                    oracle.check(got == want, || format!("{from}{{{pi}}} in {to}"));
                }
            }
        }
    }
    out.push(oracle.done());

    let mut tri = Property::new(
        Suite::Bases,
        "Sym x → p matrix is unitriangular, so {x_λ} is a basis",
    );
    for n in 0..=cfg.max_n.min(7) {
        let parts = integer_partitions(n);
        let m = conversion_matrix(Basis::X, Basis::P, n);
        for (i, row) in m.iter().enumerate() {
            let ok = row[i].is_one()
                && row
                    .iter()
                    .enumerate()
                    .all(|(j, c)| j == i || c.is_zero() || parts[j].len() > parts[i].len());
            tri.check(ok, || format!("row {}", parts[i]));
        }
    }
    out.push(tri.done());

    let mut p44 = Property::new(Suite::Bases, "x_⟦n⟧ = Σ_σ (-1)^(ℓ(σ)-1) (ℓ(σ)-1)! p_σ");
    for n in 1..=cap6 {
        let p = NCSymExpr::basis_element(Basis::X, SetPartition::top(n)).convert(Basis::P);
        for sigma in enumerate_n(n) {
            let want = int(signed_factorial(sigma.len()));
            p44.check(p.coefficient(&sigma) == want, || {
                format!("n = {n}, σ = {sigma}")
            });
        }
        p44.check(p.len() == enumerate_n(n).count(), || {
            format!("n = {n}: extra terms")
        });
    }
    out.push(p44.done());

    let mut lift = Property::new(Suite::Bases, "x_⟦n⟧ = R(ρ(x_⟦n⟧))");
    for n in 0..=cap5 {
        let x = NCSymExpr::basis_element(Basis::X, SetPartition::top(n));
        lift.check(lift_r(&rho(&x)).same_element(&x), || format!("n = {n}"));
    }
    out.push(lift.done());

    let mut rr = Property::new(Suite::Bases, "ρ ∘ R is the identity on Sym");
    for n in 0..=cap6 {
        for l in integer_partitions(n) {
            for b in Basis::ALL {
                let v = SymExpr::basis_element(b, l.clone());
                rr.check(rho(&lift_r(&v)).same_element(&v), || format!("{b}_{l}"));
            }
        }
    }
    out.push(rr.done());

    let mut shapes = Property::new(Suite::Bases, "#{τ ⊢ [n] : λ(τ) = λ} = n!/(λ! λ^!)");
    for n in 0..=cfg.max_n {
        let mut counts: HashMap<_, usize> = HashMap::new();
        for tau in enumerate_n(n) {
            *counts.entry(tau.shape()).or_default() += 1;
        }
        for l in integer_partitions(n) {
            let want = factorial(n) / (l.factorial() * l.superfactorial());
            let got = counts.get(&l).copied().unwrap_or(0);
            shapes.check(BigInt::from(got) == want, || {
                format!("λ = {l}: {got} vs {want}")
            });
        }
    }
    out.push(shapes.done());

    let mut rho_mult = Property::new(Suite::Bases, "ρ(ab) = ρ(a)ρ(b)");
    for a in partitions_up_to(cap5) {
        for b in partitions_up_to(cap5 - a.size() as u32) {
            for basis in Basis::ALL {
                let x = NCSymExpr::basis_element(basis, a.clone());
                let y = NCSymExpr::basis_element(basis, b.clone());
                let ok = rho(&x.product(&y)).same_element(&rho(&x).product(&rho(&y)));
                rho_mult.check(ok, || format!("{basis}: {a} · {b}"));
            }
        }
    }
    out.push(rho_mult.done());

    let mut thm46 = Property::new(
        Suite::Bases,
        "x_n e-positive in Sym iff x_⟦n⟧ e-positive in NCSym",
    );
    for n in 1..=cap5 {
        let nc = NCSymExpr::basis_element(Basis::X, SetPartition::top(n)).convert(Basis::E);
        let nc_pos = nc.terms().iter().all(|(_, c)| c.is_positive());
        let nc_neg = nc.terms().iter().all(|(_, c)| c.is_negative());
        let x_n = SymExpr::basis_element(Basis::X, crate::IntegerPartition::new(vec![n]).unwrap());
        let sym_pos = is_e_positive(&x_n).positive;
        let sym_neg = is_e_positive(&x_n.scale(&-Rational::one())).positive;
        thm46.check(nc_pos == sym_pos && nc_neg == sym_neg, || {
            format!("n = {n}")
        });
    }
    out.push(thm46.done());
    out
}

fn tensor_of_products(
    a: &SpeciesTensor,
    b: &SpeciesTensor,
    i: &[u32],
    j: &[u32],
    k: &[u32],
    l: &[u32],
) -> SpeciesTensor {
    let mut left_ground = i.to_vec();
    left_ground.extend_from_slice(k);
    let mut right_ground = j.to_vec();
    right_ground.extend_from_slice(l);
    let mut out = SpeciesTensor::zero(a.basis(), &left_ground, &right_ground).unwrap();
    for ((a1, a2), ca) in a.terms() {
        for ((b1, b2), cb) in b.terms() {
            let e = |p: &SetPartition, g: &[u32]| {
                SpeciesElement::from_terms(g, a.basis(), [(p.clone(), Rational::one())]).unwrap()
            };
            let left = species_mu(i, k, &e(a1, i), &e(b1, k)).unwrap();
            let right = species_mu(j, l, &e(a2, j), &e(b2, l)).unwrap();
            for (lk, lc) in left.terms() {
                for (rk, rc) in right.terms() {
                    out.add_term(lk.clone(), rk.clone(), ca * cb * lc * rc);
                }
            }
        }
    }
    out
}

/// Elements of `ground` selected by `mask`, and the rest.
fn split(ground: &[u32], mask: u32) -> (Vec<u32>, Vec<u32>) {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (i, &e) in ground.iter().enumerate() {
        if mask >> i & 1 == 1 {
            left.push(e);
        } else {
            right.push(e);
        }
    }
    (left, right)
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|e| b.contains(e)).collect()
}

fn random_bijection(rng: &mut StdRng, ground: &[u32]) -> BTreeMap<u32, u32> {
    let mut pool: Vec<u32> = (1..=3 * ground.len() as u32 + 3).collect();
    pool.shuffle(rng);
    ground.iter().copied().zip(pool).collect()
}

fn hopf_suite(cfg: &Config) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    let cap = cfg.max_n.min(5);

    let mut coassoc = Property::new(Suite::HopfAxioms, "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ on p_π and x_π");
    for pi in partitions_up_to(cap) {
        for b in [Basis::P, Basis::X] {
            let t = NCSymExpr::basis_element(b, pi.clone()).coproduct();
            coassoc.check(coproduct_left(&t) == coproduct_right(&t), || {
                format!("{b}{{{pi}}}")
            });
        }
    }
    out.push(coassoc.done());

    let mut bialg = Property::new(Suite::HopfAxioms, "Δ(ab) = Δ(a)Δ(b)");
    let mut counit = Property::new(
        Suite::HopfAxioms,
        "Δ(v) contains 1 ⊗ v and v ⊗ 1 with coefficient 1",
    );
    for a in partitions_up_to(cap) {
        for basis in [Basis::M, Basis::P, Basis::X] {
            let x = NCSymExpr::basis_element(basis, a.clone());
            let dx = x.coproduct();
            let e = SetPartition::empty();
            let ok = if a.is_empty() {
                dx.coefficient(&e, &e).is_one()
            } else {
                dx.coefficient(&e, &a).is_one() && dx.coefficient(&a, &e).is_one()
            };
            counit.check(ok, || format!("{basis}{{{a}}}"));
            for b in partitions_up_to(cap - a.size() as u32) {
                let y = NCSymExpr::basis_element(basis, b.clone());
                let lhs = x.product(&y).coproduct();
                let rhs = dx.product(&y.coproduct());
                bialg.check(lhs == rhs, || format!("{basis}: {a} · {b}"));
            }
        }
    }
    out.push(bialg.done());
    out.push(counit.done());

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut natural = Property::new(
        Suite::HopfAxioms,
        "relabelling commutes with μ and Δ (random bijections)",
    );
    for n in 0..=cap {
        let ground: Vec<u32> = (1..=n).collect();
        for _ in 0..40 {
            let mask = if n == 0 {
                0
            } else {
                rng.gen_range(0..1u32 << n)
            };
            let (s1, s2) = split(&ground, mask);
            let a: Vec<SetPartition> = enumerate(&s1).collect();
            let b: Vec<SetPartition> = enumerate(&s2).collect();
            let pa = a[rng.gen_range(0..a.len())].clone();
            let pb = b[rng.gen_range(0..b.len())].clone();
            let f = random_bijection(&mut rng, &ground);
            let restrict =
                |s: &[u32]| -> BTreeMap<u32, u32> { s.iter().map(|e| (*e, f[e])).collect() };
            let image = |s: &[u32]| -> Vec<u32> { s.iter().map(|e| f[e]).collect() };
            for basis in SpeciesBasis::ALL {
                let ea = SpeciesElement::basis_element(basis, pa.clone());
                let eb = SpeciesElement::basis_element(basis, pb.clone());
                let prod = species_mu(&s1, &s2, &ea, &eb).unwrap();
                let lhs = relabel(&f, &prod).unwrap();
                let rhs = species_mu(
                    &image(&s1),
                    &image(&s2),
                    &relabel(&restrict(&s1), &ea).unwrap(),
                    &relabel(&restrict(&s2), &eb).unwrap(),
                )
                .unwrap();
                natural.check(lhs == rhs, || format!("μ, {basis}: {pa} ⊗ {pb}, f = {f:?}"));

                let whole = SpeciesElement::basis_element(basis, pa.disjoint_union(&pb).unwrap());
                for v in [whole, prod] {
                    let d = species_delta(&s1, &s2, &v).unwrap();
                    let moved =
                        species_delta(&image(&s1), &image(&s2), &relabel(&f, &v).unwrap()).unwrap();
                    let mut relabelled =
                        SpeciesTensor::zero(basis, &image(&s1), &image(&s2)).unwrap();
                    for ((l, r), c) in d.terms() {
                        relabelled.add_term(mapped(l, &f), mapped(r, &f), c.clone());
                    }
                    natural.check(moved == relabelled, || {
                        format!("Δ, {basis}: {v}, f = {f:?}")
                    });
                }
            }
        }
    }
    out.push(natural.done());

    let mut assoc = Property::new(
        Suite::HopfAxioms,
        "μ is associative on species basis elements",
    );
    let mut unit = Property::new(Suite::HopfAxioms, "μ_{∅,S}(1 ⊗ v) = v = μ_{S,∅}(v ⊗ 1)");
    for n in 0..=cap {
        let ground: Vec<u32> = (1..=n).collect();
        for basis in SpeciesBasis::ALL {
            let one = SpeciesElement::basis_element(basis, SetPartition::empty());
            for a in enumerate(&ground) {
                let v = SpeciesElement::basis_element(basis, a.clone());
                let ok = species_mu(&[], &ground, &one, &v).unwrap() == v
                    && species_mu(&ground, &[], &v, &one).unwrap() == v;
                unit.check(ok, || format!("{basis}{{{a}}}"));
            }
            for code in 0..3u32.pow(n) {
                let mut parts: [Vec<u32>; 3] = Default::default();
                let mut c = code;
                for &e in &ground {
                    parts[(c % 3) as usize].push(e);
                    c /= 3;
                }
                let elems = |s: &[u32]| -> Vec<SpeciesElement> {
                    enumerate(s)
                        .map(|p| {
                            SpeciesElement::from_terms(s, basis, [(p, Rational::one())]).unwrap()
                        })
                        .collect()
                };
                let (s1, s2, s3) = (&parts[0], &parts[1], &parts[2]);
                let s12: Vec<u32> = s1.iter().chain(s2).copied().collect();
                let s23: Vec<u32> = s2.iter().chain(s3).copied().collect();
                for x in elems(s1) {
                    for y in elems(s2) {
                        let xy = species_mu(s1, s2, &x, &y).unwrap();
                        for z in elems(s3) {
                            let lhs = species_mu(&s12, s3, &xy, &z).unwrap();
                            let yz = species_mu(s2, s3, &y, &z).unwrap();
                            let rhs = species_mu(s1, &s23, &x, &yz).unwrap();
                            assoc.check(lhs == rhs, || format!("{basis}: {x} · {y} · {z}"));
                        }
                    }
                }
            }
        }
    }
    out.push(assoc.done());
    out.push(unit.done());

    let mut compat = Property::new(
        Suite::HopfAxioms,
        "compatibility of μ and Δ across two decompositions",
    );
    for n in 0..=cfg.max_n.min(4) {
        let ground: Vec<u32> = (1..=n).collect();
        for m1 in 0..1u32 << n {
            let (s1, s2) = split(&ground, m1);
            for m2 in 0..1u32 << n {
                let (t1, t2) = split(&ground, m2);
                let (i, j) = (intersect(&s1, &t1), intersect(&s1, &t2));
                let (k, l) = (intersect(&s2, &t1), intersect(&s2, &t2));
                for basis in SpeciesBasis::ALL {
                    for a in enumerate(&s1) {
                        let va =
                            SpeciesElement::from_terms(&s1, basis, [(a.clone(), Rational::one())])
                                .unwrap();
                        let da = species_delta(&i, &j, &va).unwrap();
                        for b in enumerate(&s2) {
                            let vb = SpeciesElement::from_terms(
                                &s2,
                                basis,
                                [(b.clone(), Rational::one())],
                            )
                            .unwrap();
                            let lhs =
                                species_delta(&t1, &t2, &species_mu(&s1, &s2, &va, &vb).unwrap())
                                    .unwrap();
                            let db = species_delta(&k, &l, &vb).unwrap();
                            let rhs = tensor_of_products(&da, &db, &i, &j, &k, &l);
                            compat.check(lhs == rhs, || {
                                format!("{basis}: {a} ⊗ {b}, S₁ = {s1:?}, T₁ = {t1:?}")
                            });
                        }
                    }
                }
            }
        }
    }
    out.push(compat.done());
    out
}

fn coproduct_x_suite(cfg: &Config) -> Vec<PropertyResult> {
    let cap = cfg.max_n.min(5);
    let mut top = Property::new(
        Suite::CoproductX,
        "closed form for Δ(x_⟦n⟧) matches the p route",
    );
    let mut general = Property::new(
        Suite::CoproductX,
        "c_{B,C} sums match the p route for every π",
    );
    let mut full = Property::new(Suite::CoproductX, "Δ on x equals converting to p and back");
    for n in 0..=cap {
        for pi in enumerate_n(n) {
            let x = NCSymExpr::basis_element(Basis::X, pi.clone());
            let brute = coproduct_via_p(&x);
            full.check(x.coproduct() == brute, || format!("π = {pi}"));
            let is_top = pi == SetPartition::top(n);
            if !is_top && n > cfg.max_n.min(4) {
                continue;
            }
            for a in 0..=n {
                for sigma in enumerate_n(a) {
                    for tau in enumerate_n(n - a) {
                        let want = brute.coefficient(&sigma, &tau);
                        if is_top {
                            let got = x_top_coproduct_coefficient(n, &sigma, &tau).unwrap();
                            top.check(got == want, || {
                                format!("n = {n}, σ = {sigma}, τ = {tau}: {got} vs {want}")
                            });
                        }
                        let got = x_coproduct_coefficient(&pi, &sigma, &tau).unwrap();
                        general.check(got == want, || {
                            format!("π = {pi}, σ = {sigma}, τ = {tau}: {got} vs {want}")
                        });
                    }
                }
            }
        }
    }
    vec![top.done(), general.done(), full.done()]
}

fn x_to_m_suite(cfg: &Config) -> Vec<PropertyResult> {
    let cap = cfg.max_n.min(6);
    let mut routes = Property::new(
        Suite::XToM,
        "acyclic-orientation route equals Möbius inversion",
    );
    let mut backends = Property::new(
        Suite::XToM,
        "orientation enumeration equals the chromatic evaluation",
    );
    let mut sinks = Property::new(Suite::XToM, "the count does not depend on the fixed sink");
    for n in 1..=cap {
        let via_graphs = x_to_m_top(n).unwrap();
        let via_mobius = NCSymExpr::basis_element(Basis::X, SetPartition::top(n)).convert(Basis::M);
        routes.check(via_graphs == via_mobius, || format!("n = {n}"));
        let enumerated = x_to_m_top_with(n, SinkCountBackend::Orientations).unwrap();
        backends.check(enumerated == via_graphs, || format!("n = {n}"));
        for sigma in enumerate_n(n) {
            let first =
                count_acyclic_unique_sink(&sigma, 1, SinkCountBackend::Orientations).unwrap();
            for sink in 2..=n {
                let c = count_acyclic_unique_sink(&sigma, sink, SinkCountBackend::Orientations)
                    .unwrap();
                sinks.check(c == first, || format!("σ = {sigma}, sink {sink}"));
            }
        }
    }
    vec![routes.done(), backends.done(), sinks.done()]
}

fn omega_suite(cfg: &Config) -> Vec<PropertyResult> {
    let cap5 = cfg.max_n.min(5);
    let mut inv = Property::new(Suite::Omega, "ω ∘ ω = id");
    let mut morph = Property::new(Suite::Omega, "ω(ab) = ω(a)ω(b)");
    for a in partitions_up_to(cap5) {
        for basis in Basis::ALL {
            let x = NCSymExpr::basis_element(basis, a.clone());
            inv.check(omega(&omega(&x)) == x, || format!("{basis}{{{a}}}"));
            for b in partitions_up_to(cap5 - a.size() as u32) {
                let y = NCSymExpr::basis_element(basis, b.clone());
                let ok = omega(&x.product(&y)) == omega(&x).product(&omega(&y));
                morph.check(ok, || format!("{basis}: {a} · {b}"));
            }
        }
    }
    let mut closed = Property::new(Suite::Omega, "ω(x_⟦n⟧) = (-1)^(n-1) Σ_σ (ℓ(σ)-1)! p_σ");
    for n in 1..=cfg.max_n.min(6) {
        let w = omega(&NCSymExpr::basis_element(Basis::X, SetPartition::top(n))).convert(Basis::P);
        for sigma in enumerate_n(n) {
            let mag = int(factorial(sigma.len() as u32 - 1));
            let want = if n % 2 == 1 { mag } else { -mag };
            closed.check(w.coefficient(&sigma) == want, || {
                format!("n = {n}, σ = {sigma}")
            });
        }
    }
    let mut one_sign = Property::new(Suite::Omega, "ω(x_π) is p-positive or p-negative");
    for pi in partitions_up_to(cap5) {
        let w = omega(&NCSymExpr::basis_element(Basis::X, pi.clone())).convert(Basis::P);
        let pos = w.terms().iter().all(|(_, c)| c.is_positive());
        let neg = w.terms().iter().all(|(_, c)| c.is_negative());
        one_sign.check(pos || neg, || format!("π = {pi}"));
    }
    let mut perm = Property::new(Suite::Omega, "ω commutes with the permutation action");
    for n in 0..=cfg.max_n.min(4) {
        let perms: Vec<Permutation> = Permutation::all(n as usize).collect();
        for pi in enumerate_n(n) {
            for basis in Basis::ALL {
                let v = NCSymExpr::basis_element(basis, pi.clone());
                for eta in &perms {
                    let ok = omega(&permute(eta, &v).unwrap()) == permute(eta, &omega(&v)).unwrap();
                    perm.check(ok, || format!("η = {eta}, {basis}{{{pi}}}"));
                }
            }
        }
    }
    vec![
        inv.done(),
        morph.done(),
        closed.done(),
        one_sign.done(),
        perm.done(),
    ]
}

/// The sign (`+1` or `-1`) of the `p`-expansion of `ω(x_π)`, or `0` if mixed.
pub fn omega_x_sign(pi: &SetPartition) -> i8 {
    let w = omega(&NCSymExpr::basis_element(Basis::X, pi.clone())).convert(Basis::P);
    if w.terms().iter().all(|(_, c)| c.is_positive()) {
        1
    } else if w.terms().iter().all(|(_, c)| c.is_negative()) {
        -1
    } else {
        0
    }
}

fn fock_suite(cfg: &Config) -> Vec<PropertyResult> {
    let cap = cfg.max_n.min(5);
    let mut prod = Property::new(Suite::Fock, "Fock product agrees with the NCSym product");
    let mut cop = Property::new(
        Suite::Fock,
        "Fock coproduct agrees with the NCSym coproduct",
    );
    for a in partitions_up_to(cap) {
        for basis in SpeciesBasis::ALL {
            let sa = SpeciesElement::basis_element(basis, a.clone());
            let na = NCSymExpr::basis_element(basis.to_basis(), a.clone());
            let reference = if basis == SpeciesBasis::X {
                coproduct_via_p(&na)
            } else {
                na.coproduct()
            };
            cop.check(fock_coproduct(&sa).unwrap() == reference, || {
                format!("{basis}{{{a}}}")
            });
            for b in partitions_up_to(cap - a.size() as u32) {
                let sb = SpeciesElement::basis_element(basis, b.clone());
                let nb = NCSymExpr::basis_element(basis.to_basis(), b.clone());
                let got = fock_product(&sa, &sb).unwrap().to_ncsym().unwrap();
                prod.check(got == na.product(&nb), || format!("{basis}: {a} · {b}"));
            }
        }
    }
    let mut tri = Property::new(
        Suite::Fock,
        "p_A = Σ_{B ≤ A} x_B and x_A = Σ_{B ≤ A} μ(B, A) p_B",
    );
    let grounds: Vec<Vec<u32>> = (0..=cap)
        .map(|n| (1..=n).map(|e| 2 * e + 1).collect())
        .collect();
    for g in &grounds {
        for a in enumerate(g) {
            let p = SpeciesElement::basis_element(SpeciesBasis::P, a.clone());
            let x = p.convert(SpeciesBasis::X);
            let ok_p = x.terms().len() == iv(&SetPartition::singletons(g), &a).len()
                && x.terms().iter().all(|(b, c)| c.is_one() && refines(b, &a));
            let xa = SpeciesElement::basis_element(SpeciesBasis::X, a.clone());
            let back = xa.convert(SpeciesBasis::P);
            let ok_x = back.terms().iter().all(|(b, c)| **c == int(mu(b, &a)))
                && back.convert(SpeciesBasis::X) == xa;
            tri.check(ok_p && ok_x, || format!("A = {a}"));
        }
    }
    vec![prod.done(), cop.done(), tri.done()]
}

/// Rank over ℚ of the given polynomials, viewed as vectors indexed by words.
fn rank(polys: &[NCPolynomial]) -> usize {
    let mut index = HashMap::new();
    let rows: Vec<Vec<(usize, Rational)>> = polys
        .iter()
        .map(|p| {
            p.terms()
                .map(|(w, c)| {
                    let n = index.len();
                    (*index.entry(*w).or_insert(n), c.clone())
                })
                .collect()
        })
        .collect();
    let mut dense: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); index.len()];
            for (i, c) in r {
                v[*i] = c.clone();
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..index.len() {
        let Some(p) = (rank..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(rank, p);
        let pivot = dense[rank][col].clone();
        for r in rank + 1..dense.len() {
            if dense[r][col].is_zero() {
                continue;
            }
            let f = &dense[r][col] / &pivot;
            let pivot_row = dense[rank].clone();
            for (x, p) in dense[r].iter_mut().zip(&pivot_row).skip(col) {
                *x -= p * &f;
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_suite(cfg: &Config) -> Vec<PropertyResult> {
    const K: u8 = 4;
    let cap = cfg.max_n.min(4);
    let mut out = Vec::new();

    let mut conv = Property::new(
        Suite::Oracle,
        "every NCSym conversion identity holds in 4 variables",
    );
    for n in 0..=cap {
        for pi in enumerate_n(n) {
            for from in Basis::ALL {
                let want = expand_nc(from, &pi, K).unwrap();
                for to in Basis::ALL {
                    let got = NCSymExpr::basis_element(from, pi.clone())
                        .convert(to)
                        .to_polynomial(K)
                        .unwrap();
                    conv.check(got == want, || format!("{from}{{{pi}}} → {to}"));
                }
            }
        }
    }
    out.push(conv.done());

    let mut sym = Property::new(
        Suite::Oracle,
        "every Sym conversion identity among m, p, e holds in 4 variables",
    );
    for n in 0..=cap {
        for l in integer_partitions(n) {
            for from in [Basis::M, Basis::P, Basis::E] {
                let want = expand_c(from, &l, K).unwrap();
                for to in [Basis::M, Basis::P, Basis::E] {
                    let got = SymExpr::basis_element(from, l.clone())
                        .convert(to)
                        .to_polynomial(K)
                        .unwrap();
                    sym.check(got == want, || format!("{from}_{l} → {to}"));
                }
            }
        }
    }
    out.push(sym.done());

    let mut lemma = Property::new(
        Suite::Oracle,
        "commuting m_π, p_π, e_π gives λ^! m_λ, p_λ, λ! e_λ",
    );
    for n in 0..=cap {
        for pi in enumerate_n(n) {
            let l = pi.shape();
            for (b, scalar) in [
                (Basis::M, l.superfactorial()),
                (Basis::P, BigInt::one()),
                (Basis::E, l.factorial()),
            ] {
                let lhs = commute(&expand_nc(b, &pi, K).unwrap());
                let rhs = expand_c(b, &l, K).unwrap().scale(&int(scalar));
                lemma.check(lhs == rhs, || format!("{b}{{{pi}}}"));
                let via_rho = rho(&NCSymExpr::basis_element(b, pi.clone()))
                    .to_polynomial(K)
                    .unwrap();
                lemma.check(via_rho == lhs, || format!("ρ({b}{{{pi}}})"));
            }
        }
    }
    out.push(lemma.done());

    let mut action = Property::new(Suite::Oracle, "permuting positions sends b_π to b_η(π)");
    for n in 0..=cap {
        let perms: Vec<Permutation> = Permutation::all(n as usize).collect();
        for pi in enumerate_n(n) {
            for b in Basis::ALL {
                let poly = expand_nc(b, &pi, K).unwrap();
                for eta in &perms {
                    let moved = expand_nc(b, &pi.apply_permutation(eta).unwrap(), K).unwrap();
                    action.check(poly.permute_positions(eta) == moved, || {
                        format!("η = {eta}, {b}{{{pi}}}")
                    });
                }
            }
        }
    }
    out.push(action.done());

    let mut rr = Property::new(
        Suite::Oracle,
        "commute ∘ symmetrize = id, and symmetrize matches R",
    );
    for n in 0..=cap {
        for l in integer_partitions(n) {
            for b in [Basis::M, Basis::P, Basis::E] {
                let q = expand_c(b, &l, K).unwrap();
                let r = symmetrize_r(&q, n as usize).unwrap();
                rr.check(commute(&r) == q, || format!("{b}_{l}"));
                let lifted = lift_r(&SymExpr::basis_element(b, l.clone()))
                    .to_polynomial(K)
                    .unwrap();
                rr.check(lifted == r, || format!("R({b}_{l})"));
            }
        }
    }
    out.push(rr.done());

    let mut trunc = Property::new(
        Suite::Oracle,
        "k and k+1 variable expansions agree on shared words",
    );
    for n in 0..=cap {
        for pi in enumerate_n(n) {
            for b in Basis::ALL {
                for k in 1..K {
                    let small = expand_nc(b, &pi, k).unwrap();
                    let big = expand_nc(b, &pi, k + 1).unwrap();
                    trunc.check(big.truncate(k) == small, || format!("{b}{{{pi}}}, k = {k}"));
                }
            }
        }
    }
    out.push(trunc.done());

    let mut faithful = Property::new(Suite::Oracle, "p_π p_σ expands to p_{π|σ}");
    for a in partitions_up_to(cfg.max_n.min(5)) {
        for b in partitions_up_to(cfg.max_n.min(5) - a.size() as u32) {
            let k = ((a.size() + b.size()) as u8).max(1);
            let lhs = expand_nc(Basis::P, &a, k)
                .unwrap()
                .mul(&expand_nc(Basis::P, &b, k).unwrap());
            let rhs = expand_nc(Basis::P, &a.slash(&b).unwrap(), k).unwrap();
            faithful.check(lhs == rhs, || format!("{a} | {b}"));
        }
    }
    out.push(faithful.done());

    let mut indep = Property::new(
        Suite::Oracle,
        "with k = n the expansions of a basis are independent",
    );
    for n in 0..=cap {
        let k = n.max(1) as u8;
        for b in Basis::ALL {
            let polys: Vec<NCPolynomial> = enumerate_n(n)
                .map(|pi| expand_nc(b, &pi, k).unwrap())
                .collect();
            indep.check(rank(&polys) == polys.len(), || format!("{b}, n = {n}"));
        }
    }
    out.push(indep.done());
    out
}
