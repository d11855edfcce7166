//! The refinement lattice `Π[S]`.
//!
//! `B ≤ A` when every block of `B` lies inside a block of `A`. Möbius values
//! are computed from the product formula over the blocks of the upper
//! partition; the recursive definition only appears in tests.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::partitions::SetPartition;
use crate::signed_factorial;

/// Iterator over restricted growth strings of a fixed length, in
/// lexicographic order starting from all zeros.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    current: Vec<usize>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(len: usize) -> Self {
        Self {
            current: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let a = &mut self.current;
        let mut prefix_max = Vec::with_capacity(a.len());
        let mut m = 0;
        for &x in a.iter() {
            m = m.max(x);
            prefix_max.push(m);
        }
        match (1..a.len()).rev().find(|&i| a[i] <= prefix_max[i - 1]) {
            Some(i) => {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = 0;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Streams every set partition of a finite ground set exactly once.
#[derive(Clone, Debug)]
pub struct Partitions {
    ground: Vec<u32>,
    strings: RestrictedGrowth,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.strings
            .next()
            .map(|labels| SetPartition::from_labels(&self.ground, &labels))
    }
}

/// All partitions of `ground` in restricted-growth-string order.
pub fn enumerate(ground: &[u32]) -> Partitions {
    let mut ground = ground.to_vec();
    ground.sort_unstable();
    ground.dedup();
    Partitions {
        strings: RestrictedGrowth::new(ground.len()),
        ground,
    }
}

/// All partitions of `[n]`.
pub fn enumerate_n(n: u32) -> Partitions {
    enumerate(&(1..=n).collect::<Vec<_>>())
}

fn check_same_ground(a: &SetPartition, b: &SetPartition) -> Result<()> {
    if a.ground() != b.ground() {
        return domain(format!("{a} and {b} partition different sets"));
    }
    Ok(())
}

fn block_index(a: &SetPartition) -> HashMap<u32, usize> {
    a.blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |&e| (e, i)))
        .collect()
}

/// `B ≤ A` in the refinement order.
pub fn is_refinement(b: &SetPartition, a: &SetPartition) -> Result<bool> {
    check_same_ground(a, b)?;
    Ok(refines(b, a))
}

/// Refinement test without the ground-set check.
pub(crate) fn refines(b: &SetPartition, a: &SetPartition) -> bool {
    let idx = block_index(a);
    b.blocks().iter().all(|blk| {
        let home = idx.get(&blk[0]);
        home.is_some() && blk.iter().all(|e| idx.get(e) == home)
    })
}

/// Greatest lower bound: the nonempty pairwise intersections of blocks.
pub fn meet(a: &SetPartition, b: &SetPartition) -> Result<SetPartition> {
    check_same_ground(a, b)?;
    let ia = block_index(a);
    let ib = block_index(b);
    let mut groups: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
    for e in a.ground() {
        groups.entry((ia[&e], ib[&e])).or_default().push(e);
    }
    Ok(SetPartition::canonical(groups.into_values().collect()))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }
}

/// Least upper bound: connected components of the union of both block
/// relations.
pub fn join(a: &SetPartition, b: &SetPartition) -> Result<SetPartition> {
    check_same_ground(a, b)?;
    let ground = a.ground();
    let pos = |e: u32| ground.binary_search(&e).unwrap();
    let mut uf = UnionFind::new(ground.len());
    for blk in a.blocks().iter().chain(b.blocks()) {
        for w in blk.windows(2) {
            uf.union(pos(w[0]), pos(w[1]));
        }
    }
    let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
    for (i, &e) in ground.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(e);
    }
    Ok(SetPartition::canonical(groups.into_values().collect()))
}

/// `λᵢ(B, A)`: how many blocks of `B` sit inside each block of `A`.
fn block_counts(b: &SetPartition, a: &SetPartition) -> Vec<usize> {
    let idx = block_index(a);
    let mut counts = vec![0; a.len()];
    for blk in b.blocks() {
        counts[idx[&blk[0]]] += 1;
    }
    counts
}

/// Möbius function `μ(B, A)` of the partition lattice, for `B ≤ A`.
pub fn mobius(b: &SetPartition, a: &SetPartition) -> Result<BigInt> {
    if !is_refinement(b, a)? {
        return domain(format!("{b} is not a refinement of {a}"));
    }
    Ok(mobius_unchecked(b, a))
}

pub(crate) fn mobius_unchecked(b: &SetPartition, a: &SetPartition) -> BigInt {
    block_counts(b, a)
        .into_iter()
        .map(signed_factorial)
        .product()
}

/// `μ(π, ⟦n⟧) = (-1)^(ℓ-1) (ℓ-1)!`.
pub fn mobius_to_top(pi: &SetPartition) -> Result<BigInt> {
    if pi.is_empty() {
        return domain("the empty partition has no top element above it");
    }
    if !pi.is_standard() {
        return domain(format!("{pi} is not a partition of [n]"));
    }
    Ok(signed_factorial(pi.len()))
}

/// `μ(0̂, τ)` where `0̂` is the all-singletons partition of the same ground set.
pub fn mobius_from_bottom(tau: &SetPartition) -> BigInt {
    tau.blocks()
        .iter()
        .map(|b| signed_factorial(b.len()))
        .product()
}

/// Visits every combination choosing one entry from each list.
pub(crate) fn for_each_choice<T>(lists: &[Vec<T>], mut f: impl FnMut(&[&T])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0; lists.len()];
    let mut choice: Vec<&T> = lists.iter().map(|l| &l[0]).collect();
    loop {
        f(&choice);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                choice[k] = &lists[k][idx[k]];
                break;
            }
            idx[k] = 0;
            choice[k] = &lists[k][0];
        }
    }
}

/// Every `C` with `lower ≤ C ≤ upper`.
pub fn interval(lower: &SetPartition, upper: &SetPartition) -> Result<Vec<SetPartition>> {
    if !is_refinement(lower, upper)? {
        return domain(format!("{lower} is not a refinement of {upper}"));
    }
    Ok(interval_unchecked(lower, upper))
}

pub(crate) fn interval_unchecked(lower: &SetPartition, upper: &SetPartition) -> Vec<SetPartition> {
    let idx = block_index(upper);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); upper.len()];
    for (i, blk) in lower.blocks().iter().enumerate() {
        groups[idx[&blk[0]]].push(i);
    }
    let labelings: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|g| RestrictedGrowth::new(g.len()).collect())
        .collect();
    let mut out = Vec::new();
    for_each_choice(&labelings, |choice| {
        let mut blocks = Vec::new();
        for (group, labels) in groups.iter().zip(choice) {
            let nb = labels.iter().copied().max().map_or(0, |m| m + 1);
            let mut merged = vec![Vec::new(); nb];
            for (&li, &lb) in group.iter().zip(labels.iter()) {
                merged[lb].extend_from_slice(&lower.blocks()[li]);
            }
            blocks.extend(merged);
        }
        out.push(SetPartition::canonical(blocks));
    });
    out
}

/// Every `B ≤ a`.
pub fn refinements(a: &SetPartition) -> Vec<SetPartition> {
    interval_unchecked(&SetPartition::singletons(&a.ground()), a)
}

/// Every `B ≥ a`.
pub fn coarsenings(a: &SetPartition) -> Vec<SetPartition> {
    let ground = a.ground();
    let top = if ground.is_empty() {
        SetPartition::empty()
    } else {
        SetPartition::canonical(vec![ground])
    };
    interval_unchecked(a, &top)
}

/// A pair `lower ≤ upper` on a common ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionInterval {
    lower: SetPartition,
    upper: SetPartition,
}

impl PartitionInterval {
    pub fn new(lower: SetPartition, upper: SetPartition) -> Result<Self> {
        if !is_refinement(&lower, &upper)? {
            return domain(format!("{lower} is not a refinement of {upper}"));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &SetPartition {
        &self.lower
    }

    pub fn upper(&self) -> &SetPartition {
        &self.upper
    }

    /// `λᵢ(B, A)` for each block of the upper partition, in block order.
    pub fn block_counts(&self) -> Vec<usize> {
        block_counts(&self.lower, &self.upper)
    }

    pub fn mobius(&self) -> BigInt {
        mobius_unchecked(&self.lower, &self.upper)
    }

    pub fn elements(&self) -> Vec<SetPartition> {
        interval_unchecked(&self.lower, &self.upper)
    }
}
