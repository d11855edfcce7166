//! Integer partitions, set partitions of finite sets of positive integers and
//! permutations in one-line notation.
//!
//! A [`SetPartition`] is always kept in canonical form: elements ascending
//! inside each block, blocks ordered by their minimum. Equality and hashing
//! therefore coincide with equality of partitions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};
use crate::factorial;

/// A nonincreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return domain("integer partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts {parts:?} are not nonincreasing"));
        }
        Ok(Self { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_parts(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of each part value.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// `λ! = ∏ λᵢ!`.
    pub fn factorial(&self) -> BigInt {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// `λ^! = ∏ mᵢ!` where `mᵢ` is the multiplicity of the part `i`.
    pub fn superfactorial(&self) -> BigInt {
        self.multiplicities()
            .values()
            .map(|&m| factorial(m))
            .product()
    }

    /// The partition whose parts are those of `self` and `other` together.
    pub fn concat(&self, other: &IntegerPartition) -> IntegerPartition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }
}

impl Ord for IntegerPartition {
    /// Smaller integers first; within one integer, lexicographically larger
    /// part lists first (so `3 < 21 < 111`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for IntegerPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Comma-separated parts, nonincreasing; `()` or the empty string is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        let mut offset = 0;
        for tok in s.split(',') {
            let t = tok.trim();
            let p = t.parse::<u32>().map_err(|_| Error::Parse {
                pos: offset,
                msg: format!("invalid part `{t}`"),
            })?;
            parts.push(p);
            offset += tok.len() + 1;
        }
        Self::new(parts).map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        })
    }
}

/// All partitions of `n`, largest first part first.
pub fn integer_partitions(n: u32) -> Vec<IntegerPartition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A partition of a finite set of positive integers into nonempty blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Validates and canonicalises a list of blocks.
    pub fn from_blocks(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            if b.is_empty() {
                return domain("set partition blocks must be nonempty");
            }
            for &e in b {
                if e == 0 {
                    return domain("set partition elements must be positive integers");
                }
                if !seen.insert(e) {
                    return domain(format!("element {e} occurs in more than one block"));
                }
            }
        }
        Ok(Self::canonical(blocks))
    }

    /// Canonicalises blocks already known to be nonempty and disjoint.
    pub(crate) fn canonical(mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { blocks }
    }

    /// The empty partition of the empty set.
    pub fn empty() -> Self {
        Self::default()
    }

    /// `⟦n⟧`, the single-block partition of `[n]`.
    pub fn top(n: u32) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Self {
            blocks: vec![(1..=n).collect()],
        }
    }

    /// `1/2/⋯/n`.
    pub fn bottom(n: u32) -> Self {
        Self::singletons(&(1..=n).collect::<Vec<_>>())
    }

    /// All-singletons partition of the given ground set.
    pub fn singletons(ground: &[u32]) -> Self {
        Self::canonical(ground.iter().map(|&e| vec![e]).collect())
    }

    /// Builds the partition of `ground` (sorted ascending) whose element
    /// `ground[i]` lies in block `labels[i]`.
    pub fn from_labels(ground: &[u32], labels: &[usize]) -> Self {
        debug_assert_eq!(ground.len(), labels.len());
        let nblocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (&e, &l) in ground.iter().zip(labels) {
            blocks[l].push(e);
        }
        blocks.retain(|b: &Vec<u32>| !b.is_empty());
        Self::canonical(blocks)
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Number of blocks `ℓ(A)`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// The ground set, ascending.
    pub fn ground(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.blocks.iter().flatten().copied().collect();
        g.sort_unstable();
        g
    }

    /// True when the ground set is `[n]` for `n = size()`.
    pub fn is_standard(&self) -> bool {
        self.ground().iter().zip(1u32..).all(|(&a, b)| a == b)
    }

    /// Index of the block containing `e`.
    pub fn block_of(&self, e: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&e).is_ok())
    }

    /// Restricted growth string over the sorted ground set.
    pub fn rgs(&self) -> Vec<usize> {
        let mut label: HashMap<u32, usize> = HashMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for &e in b {
                label.insert(e, i);
            }
        }
        self.ground().iter().map(|e| label[e]).collect()
    }

    /// `λ(A)`: block sizes in nonincreasing order.
    pub fn shape(&self) -> IntegerPartition {
        let mut parts: Vec<u32> = self.blocks.iter().map(|b| b.len() as u32).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    /// Relabels every element through `f`, which must be injective on the
    /// ground set.
    pub(crate) fn map_elements(&self, f: impl Fn(u32) -> u32) -> Self {
        Self::canonical(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&e| f(e)).collect())
                .collect(),
        )
    }

    /// `St(A)`: the order-preserving relabelling onto `[|ground|]`.
    pub fn standardize(&self) -> Self {
        let ground = self.ground();
        self.map_elements(|e| ground.binary_search(&e).unwrap() as u32 + 1)
    }

    /// Inverse of standardisation: relabels a partition of `[k]` onto the
    /// `k`-element set `target` (ascending order is preserved).
    pub fn destandardize(&self, target: &[u32]) -> Result<Self> {
        if !self.is_standard() || self.size() != target.len() {
            return domain(format!(
                "cannot relabel {self} onto a set of size {}",
                target.len()
            ));
        }
        let mut sorted = target.to_vec();
        sorted.sort_unstable();
        Ok(self.map_elements(|e| sorted[e as usize - 1]))
    }

    /// `A|_T`: the nonempty intersections of the blocks with `T`.
    pub fn restrict(&self, t: &[u32]) -> Result<Self> {
        let ground = self.ground();
        if let Some(e) = t.iter().find(|e| ground.binary_search(e).is_err()) {
            return domain(format!("{e} is not in the ground set of {self}"));
        }
        Ok(self.restrict_unchecked(t))
    }

    pub(crate) fn restrict_unchecked(&self, t: &[u32]) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .copied()
                    .filter(|e| t.contains(e))
                    .collect::<Vec<_>>()
            })
            .filter(|b| !b.is_empty())
            .collect();
        Self::canonical(blocks)
    }

    /// `A ⊔ B` for partitions of disjoint ground sets.
    pub fn disjoint_union(&self, other: &SetPartition) -> Result<Self> {
        let g = self.ground();
        if let Some(e) = other.ground().iter().find(|e| g.binary_search(e).is_ok()) {
            return domain(format!("ground sets of {self} and {other} share {e}"));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(Self::canonical(blocks))
    }

    /// `π|σ`: the blocks of `σ` shifted past the ground set of `π`.
    pub fn slash(&self, other: &SetPartition) -> Result<Self> {
        if !self.is_standard() || !other.is_standard() {
            return domain(format!(
                "slash product needs standard ground sets, got {self} and {other}"
            ));
        }
        Ok(self.slash_unchecked(other))
    }

    pub(crate) fn slash_unchecked(&self, other: &SetPartition) -> Self {
        let n = self.size() as u32;
        let mut blocks = self.blocks.clone();
        blocks.extend(
            other
                .blocks
                .iter()
                .map(|b| b.iter().map(|e| e + n).collect()),
        );
        Self { blocks }
    }

    /// `η(π)`: replaces each `i` by `η(i)`.
    pub fn apply_permutation(&self, eta: &Permutation) -> Result<Self> {
        if !self.is_standard() || self.size() != eta.len() {
            return domain(format!(
                "permutation of size {} cannot act on {self}",
                eta.len()
            ));
        }
        Ok(self.map_elements(|e| eta.apply(e)))
    }

    /// True when every block lies inside `s1` or inside its complement.
    pub fn respects_split(&self, s1: &[u32]) -> bool {
        self.blocks.iter().all(|b| {
            let inside = s1.contains(&b[0]);
            b.iter().all(|e| s1.contains(e) == inside)
        })
    }
}

/// `⟦λ⟧ = ⟦λ₁⟧|⟦λ₂⟧|⋯`, consecutive blocks of sizes `λ₁, λ₂, …`.
pub fn bracket(lambda: &IntegerPartition) -> SetPartition {
    let mut blocks = Vec::with_capacity(lambda.len());
    let mut next = 1;
    for &p in lambda.parts() {
        blocks.push((next..next + p).collect());
        next += p;
    }
    SetPartition { blocks }
}

impl Ord for SetPartition {
    /// Ground-set size first, then the block lists lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("()");
        }
        let mut blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        // comma-free text is read digit by digit, so large singletons need a marker
        if self.blocks.iter().all(|b| b.len() == 1) && self.blocks.iter().any(|b| b[0] > 9) {
            blocks[0].push(',');
        }
        f.write_str(&blocks.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Blocks separated by `/`, elements by `,`. When the text contains no
    /// comma at all, every block is read digit by digit (`13/24`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        let shorthand = !s.contains(',');
        let mut blocks = Vec::new();
        let mut offset = 0;
        for raw in s.split('/') {
            let mut block = Vec::new();
            if shorthand {
                for (i, c) in raw.char_indices() {
                    if c.is_whitespace() {
                        continue;
                    }
                    match c.to_digit(10) {
                        Some(d) if d > 0 => block.push(d),
                        _ => {
                            return Err(Error::Parse {
                                pos: offset + i,
                                msg: format!("unexpected `{c}` in set partition"),
                            })
                        }
                    }
                }
            } else {
                let mut inner = offset;
                for tok in raw.split(',') {
                    let t = tok.trim();
                    if t.is_empty() && !block.is_empty() {
                        inner += tok.len() + 1;
                        continue;
                    }
                    let e = t.parse::<u32>().map_err(|_| Error::Parse {
                        pos: inner,
                        msg: format!("invalid element `{t}`"),
                    })?;
                    block.push(e);
                    inner += tok.len() + 1;
                }
            }
            if block.is_empty() {
                return Err(Error::Parse {
                    pos: offset,
                    msg: "empty block".into(),
                });
            }
            blocks.push(block);
            offset += raw.len() + 1;
        }
        SetPartition::from_blocks(blocks).map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        })
    }
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i == 0 || i > n || seen[i as usize - 1] {
                return domain(format!("{images:?} is not a permutation of 1..{n}"));
            }
            seen[i as usize - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `η(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return domain("cannot compose permutations of different sizes");
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (1..=n as u32)
            .permutations(n)
            .map(|images| Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated images, or digit shorthand like `1324`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Option<Vec<u32>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let images = images.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("invalid permutation `{s}`"),
        })?;
        Permutation::new(images).map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        })
    }
}
