//! Complete multipartite graphs `K_σ`, their stable partitions, chromatic
//! polynomials and acyclic orientations with a unique sink.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::lattice::enumerate_n;
use crate::partitions::SetPartition;

/// Largest vertex count accepted by the orientation enumerator.
pub const MAX_ORIENTATION_VERTICES: usize = 7;

/// The complete multipartite graph on `[n]` whose parts are the blocks of `σ`:
/// `i` and `j` are adjacent iff they lie in different blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultipartiteGraph {
    parts: SetPartition,
    label: Vec<usize>,
}

impl MultipartiteGraph {
    pub fn new(parts: SetPartition) -> Result<Self> {
        if !parts.is_standard() {
            return domain(format!("{parts} is not a partition of [n]"));
        }
        let mut label = vec![0; parts.size()];
        for (i, b) in parts.blocks().iter().enumerate() {
            for &e in b {
                label[e as usize - 1] = i;
            }
        }
        Ok(Self { parts, label })
    }

    pub fn parts(&self) -> &SetPartition {
        &self.parts
    }

    pub fn vertex_count(&self) -> usize {
        self.label.len()
    }

    pub fn adjacent(&self, i: u32, j: u32) -> bool {
        self.label[i as usize - 1] != self.label[j as usize - 1]
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let n = self.vertex_count() as u32;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn independent(&self, block: &[u32]) -> bool {
        block
            .iter()
            .enumerate()
            .all(|(k, &i)| block[k + 1..].iter().all(|&j| !self.adjacent(i, j)))
    }

    /// Partitions of the vertex set into independent sets.
    pub fn stable_partitions(&self) -> impl Iterator<Item = SetPartition> + '_ {
        enumerate_n(self.vertex_count() as u32)
            .filter(move |tau| tau.blocks().iter().all(|b| self.independent(b)))
    }

    /// `χ(k) = Σ_{τ stable} k(k-1)⋯(k-ℓ(τ)+1)`.
    pub fn chromatic_polynomial(&self) -> ChromaticPolynomial {
        let mut falling = vec![BigInt::zero(); self.vertex_count() + 1];
        for tau in self.stable_partitions() {
            falling[tau.len()] += 1;
        }
        ChromaticPolynomial { falling }
    }
}

/// A polynomial stored in the falling-factorial basis: `Σ_j a_j (k)_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticPolynomial {
    falling: Vec<BigInt>,
}

impl ChromaticPolynomial {
    /// `a_j` = number of stable partitions with `j` blocks.
    pub fn falling_coefficients(&self) -> &[BigInt] {
        &self.falling
    }

    /// Coefficients of `1, k, k², …`.
    pub fn monomial_coefficients(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.falling.len()];
        // (k)_j expanded incrementally: (k)_{j+1} = (k)_j · (k - j)
        let mut ff = vec![BigInt::one()];
        for (j, a) in self.falling.iter().enumerate() {
            for (d, c) in ff.iter().enumerate() {
                out[d] += a * c;
            }
            let mut next = vec![BigInt::zero(); ff.len() + 1];
            for (d, c) in ff.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigInt::from(j);
            }
            ff = next;
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    pub fn eval(&self, k: i64) -> BigInt {
        self.monomial_coefficients()
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    /// `(χ(k)/k)` evaluated at `k = 0`, i.e. the linear coefficient.
    pub fn reduced_at_zero(&self) -> BigInt {
        self.monomial_coefficients()
            .get(1)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::fmt::Display for ChromaticPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let coeffs = self.monomial_coefficients();
        let mut terms = Vec::new();
        for (d, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match d {
                0 => format!("{c}"),
                1 => format!("{c}*k"),
                _ => format!("{c}*k^{d}"),
            });
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

/// How to count acyclic orientations with a unique fixed sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SinkCountBackend {
    /// `(-1)^(n-1) (χ/k)(0)`.
    Chromatic,
    /// Exhaustive enumeration of all `2^|E|` orientations.
    Orientations,
}

/// Number of acyclic orientations of `K_σ` whose only sink is `sink`.
pub fn count_acyclic_unique_sink(
    sigma: &SetPartition,
    sink: u32,
    backend: SinkCountBackend,
) -> Result<BigInt> {
    let g = MultipartiteGraph::new(sigma.clone())?;
    let n = g.vertex_count();
    if sink == 0 || sink as usize > n {
        return domain(format!(
            "sink {sink} is not a vertex of a graph on {n} vertices"
        ));
    }
    match backend {
        SinkCountBackend::Chromatic => {
            let v = g.chromatic_polynomial().reduced_at_zero();
            Ok(if n % 2 == 0 { -v } else { v })
        }
        SinkCountBackend::Orientations => count_by_enumeration(&g, sink).map(BigInt::from),
    }
}

fn count_by_enumeration(g: &MultipartiteGraph, sink: u32) -> Result<u64> {
    let n = g.vertex_count();
    if n > MAX_ORIENTATION_VERTICES {
        return domain(format!(
            "orientation enumeration is capped at {MAX_ORIENTATION_VERTICES} vertices"
        ));
    }
    let edges = g.edges();
    let sink = sink as usize - 1;
    let mut count = 0u64;
    let mut out = vec![0u32; n];
    for mask in 0u64..(1u64 << edges.len()) {
        out.iter_mut().for_each(|o| *o = 0);
        for (k, &(i, j)) in edges.iter().enumerate() {
            let (from, to) = if mask >> k & 1 == 0 { (i, j) } else { (j, i) };
            out[from as usize - 1] |= 1 << (to - 1);
        }
        let sinks = out.iter().filter(|&&o| o == 0).count();
        if sinks != 1 || out[sink] != 0 {
            continue;
        }
        if is_acyclic(&out) {
            count += 1;
        }
    }
    Ok(count)
}

/// Repeatedly strips sinks; the digraph is acyclic iff everything goes.
fn is_acyclic(out: &[u32]) -> bool {
    let mut alive: u32 = (1u32 << out.len()) - 1;
    loop {
        let sinks = (0..out.len())
            .filter(|&v| alive >> v & 1 == 1 && out[v] & alive == 0)
            .fold(0u32, |acc, v| acc | 1 << v);
        if sinks == 0 {
            return alive == 0;
        }
        alive &= !sinks;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::refinements;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn graph(s: &str) -> MultipartiteGraph {
        MultipartiteGraph::new(sp(s)).unwrap()
    }

    #[test]
    fn stable_partition_examples() {
        assert_eq!(
            graph("1/2/3").stable_partitions().collect::<Vec<_>>(),
            vec![sp("1/2/3")]
        );
        assert_eq!(graph("1234").stable_partitions().count(), 15);
        let mut got: Vec<_> = graph("12/3").stable_partitions().collect();
        got.sort();
        assert_eq!(got, vec![sp("1/2/3"), sp("12/3")]);
    }

    #[test]
    fn chromatic_examples() {
        let k3 = graph("1/2/3").chromatic_polynomial();
        // k(k-1)(k-2) = k³ - 3k² + 2k
        assert_eq!(
            k3.monomial_coefficients(),
            [0, 2, -3, 1].map(BigInt::from).to_vec()
        );
        for n in 1..=6u32 {
            let empty = MultipartiteGraph::new(SetPartition::top(n)).unwrap();
            let mut want = vec![BigInt::zero(); n as usize + 1];
            want[n as usize] = BigInt::one();
            assert_eq!(empty.chromatic_polynomial().monomial_coefficients(), want);
        }
        assert_eq!(k3.to_string(), "1*k^3 - 3*k^2 + 2*k");
    }

    fn proper_colourings(g: &MultipartiteGraph, k: u32) -> u64 {
        let n = g.vertex_count();
        if k == 0 {
            return u64::from(n == 0);
        }
        let mut count = 0;
        let mut colour = vec![0u32; n];
        loop {
            let ok = g
                .edges()
                .iter()
                .all(|&(i, j)| colour[i as usize - 1] != colour[j as usize - 1]);
            if ok {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    return count;
                }
                colour[pos] += 1;
                if colour[pos] < k {
                    break;
                }
                colour[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn chromatic_counts_colourings() {
        for n in 1..=5 {
            for sigma in enumerate_n(n) {
                let g = MultipartiteGraph::new(sigma).unwrap();
                let chi = g.chromatic_polynomial();
                assert!(chi.eval(0).is_zero());
                for k in 0..=4 {
                    assert_eq!(chi.eval(k as i64), BigInt::from(proper_colourings(&g, k)));
                }
            }
        }
    }

    #[test]
    fn stable_partitions_are_refinements() {
        for n in 0..=6 {
            for sigma in enumerate_n(n) {
                let g = MultipartiteGraph::new(sigma.clone()).unwrap();
                let mut stable: Vec<_> = g.stable_partitions().collect();
                let mut below = refinements(&sigma);
                stable.sort();
                below.sort();
                assert_eq!(stable, below);
            }
        }
    }

    #[test]
    fn sink_count_examples() {
        use SinkCountBackend::*;
        for backend in [Chromatic, Orientations] {
            for sink in 1..=3 {
                assert_eq!(
                    count_acyclic_unique_sink(&sp("1/2/3"), sink, backend).unwrap(),
                    BigInt::from(2)
                );
            }
            assert_eq!(
                count_acyclic_unique_sink(&sp("1/23"), 1, backend).unwrap(),
                BigInt::from(1)
            );
            for n in 2..=5 {
                let top = SetPartition::top(n);
                assert!(count_acyclic_unique_sink(&top, 1, backend)
                    .unwrap()
                    .is_zero());
            }
            assert_eq!(
                count_acyclic_unique_sink(&sp("1"), 1, backend).unwrap(),
                BigInt::one()
            );
            assert!(count_acyclic_unique_sink(&sp("12"), 3, backend).is_err());
        }
        assert!(count_acyclic_unique_sink(&SetPartition::bottom(8), 1, Orientations).is_err());
    }

    #[test]
    fn backends_agree_for_every_sink() {
        for n in 1..=6 {
            for sigma in enumerate_n(n) {
                let reference =
                    count_acyclic_unique_sink(&sigma, 1, SinkCountBackend::Chromatic).unwrap();
                for sink in 1..=n {
                    let got =
                        count_acyclic_unique_sink(&sigma, sink, SinkCountBackend::Orientations)
                            .unwrap();
                    assert_eq!(got, reference, "σ = {sigma}, sink {sink}");
                }
            }
        }
    }
}
