//! Immutable bitset-adjacency graphs plus the invariants the certificates
//! are built from: strong-regularity parameters, triangle and 4-clique
//! common-neighborhood distributions, and maximal clique sizes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A simple undirected graph on `n` vertices stored as `n` bit rows.
/// Symmetric with zero diagonal by construction, immutable afterwards, so
/// shared references are safe to scan from any number of threads.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<String>>,
}

/// Edge-set equality; labels are metadata and do not participate.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}
impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n, self.edge_count())
    }
}

pub struct GraphBuilder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> GraphBuilder {
        let words = n.div_ceil(64);
        GraphBuilder {
            n,
            words,
            bits: vec![0; n * words],
            labels: None,
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn build(self) -> Graph {
        Graph {
            n: self.n,
            words: self.words,
            bits: self.bits,
            labels: self.labels,
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    /// Builds from a symmetric predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if adjacent(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits_to_indices(self.row(v))
    }

    /// Edge set complemented off the diagonal; labels carry over.
    pub fn complement(&self) -> Graph {
        let mut out = self.clone();
        for v in 0..self.n {
            let base = v * self.words;
            for w in 0..self.words {
                out.bits[base + w] = !self.bits[base + w];
            }
            // clear the diagonal bit and the padding tail
            out.bits[base + v / 64] &= !(1 << (v % 64));
            if self.n % 64 != 0 {
                out.bits[base + self.words - 1] &= (1u64 << (self.n % 64)) - 1;
            }
        }
        out
    }

    /// Plain-text adjacency listing for debugging: one `v: n1 n2 ...` line
    /// per vertex, followed by the label when present.
    pub fn to_adjacency_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for v in 0..self.n {
            let neighbors: Vec<String> =
                self.neighbors(v).iter().map(|u| u.to_string()).collect();
            let _ = write!(out, "{v}: {}", neighbors.join(" "));
            if let Some(labels) = &self.labels {
                let _ = write!(out, "  # {}", labels[v]);
            }
            out.push('\n');
        }
        out
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    b.add_edge(perm[u], perm[v]);
                }
            }
        }
        if let Some(labels) = &self.labels {
            let mut out = vec![String::new(); self.n];
            for (v, l) in labels.iter().enumerate() {
                out[perm[v]] = l.clone();
            }
            b.set_labels(out);
        }
        b.build()
    }
}

pub fn bits_to_indices(row: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in row.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

pub fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Strong-regularity parameters, satisfying `k(k-l-1) = (v-k-1)m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub fn feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "srg({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SrgFailure {
    #[error("graph is not regular: deg({u}) = {du}, deg({v}) = {dv}")]
    NotRegular { u: usize, du: usize, v: usize, dv: usize },
    #[error("complete or empty graphs are not treated as strongly regular")]
    Degenerate,
    #[error("adjacent pair ({u},{v}) has {got} common neighbors, expected {expected}")]
    LambdaMismatch { u: usize, v: usize, expected: usize, got: usize },
    #[error("non-adjacent pair ({u},{v}) has {got} common neighbors, expected {expected}")]
    MuMismatch { u: usize, v: usize, expected: usize, got: usize },
}

/// Decides strong regularity by a full pair scan; a witness pair is
/// reported on failure.
pub fn srg_params(g: &Graph) -> Result<SrgParams, SrgFailure> {
    let n = g.n();
    if n == 0 {
        return Err(SrgFailure::Degenerate);
    }
    let k = g.degree(0);
    for v in 1..n {
        let dv = g.degree(v);
        if dv != k {
            return Err(SrgFailure::NotRegular { u: 0, du: k, v, dv });
        }
    }
    if k == 0 || k == n - 1 {
        return Err(SrgFailure::Degenerate);
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let common = popcount_and(g.row(u), g.row(v));
            if g.has_edge(u, v) {
                match lambda {
                    None => lambda = Some(common),
                    Some(expected) if expected != common => {
                        return Err(SrgFailure::LambdaMismatch { u, v, expected, got: common })
                    }
                    _ => {}
                }
            } else {
                match mu {
                    None => mu = Some(common),
                    Some(expected) if expected != common => {
                        return Err(SrgFailure::MuMismatch { u, v, expected, got: common })
                    }
                    _ => {}
                }
            }
        }
    }
    let params = SrgParams {
        v: n,
        k,
        lambda: lambda.expect("k > 0 gives an edge"),
        mu: mu.expect("k < n-1 gives a non-edge"),
    };
    debug_assert!(params.feasible());
    Ok(params)
}

/// Histogram of `|N(x) ∩ N(y) ∩ N(z)|` over all triangles `{x,y,z}`.
pub fn triple_intersection_distribution(g: &Graph) -> BTreeMap<usize, u64> {
    triangle_scan(g).0
}

/// Same histogram plus one witness triangle per distinct value.
pub fn triangle_scan(g: &Graph) -> (BTreeMap<usize, u64>, BTreeMap<usize, [usize; 3]>) {
    let n = g.n();
    let mut hist = BTreeMap::new();
    let mut witness: BTreeMap<usize, [usize; 3]> = BTreeMap::new();
    let mut uv = vec![0u64; g.words()];
    for u in 0..n {
        for v in bits_to_indices(g.row(u)) {
            if v <= u {
                continue;
            }
            for (slot, (a, b)) in uv.iter_mut().zip(g.row(u).iter().zip(g.row(v))) {
                *slot = a & b;
            }
            // only count each triangle once: w > v > u
            for w in bits_to_indices(&uv) {
                if w <= v {
                    continue;
                }
                let t = popcount_and(&uv, g.row(w));
                *hist.entry(t).or_insert(0) += 1;
                witness.entry(t).or_insert([u, v, w]);
            }
        }
    }
    (hist, witness)
}

/// Histogram of `|N(x) ∩ N(y) ∩ N(z) ∩ N(t)|` over all 4-cliques, with one
/// witness per value. Fallback invariant for graphs whose triangle
/// distribution does not separate.
pub fn four_clique_scan(g: &Graph) -> (BTreeMap<usize, u64>, BTreeMap<usize, [usize; 4]>) {
    let n = g.n();
    let mut hist = BTreeMap::new();
    let mut witness: BTreeMap<usize, [usize; 4]> = BTreeMap::new();
    let mut uv = vec![0u64; g.words()];
    let mut uvw = vec![0u64; g.words()];
    for u in 0..n {
        for v in bits_to_indices(g.row(u)) {
            if v <= u {
                continue;
            }
            for (slot, (a, b)) in uv.iter_mut().zip(g.row(u).iter().zip(g.row(v))) {
                *slot = a & b;
            }
            for w in bits_to_indices(&uv) {
                if w <= v {
                    continue;
                }
                for (slot, (a, b)) in uvw.iter_mut().zip(uv.iter().zip(g.row(w))) {
                    *slot = a & b;
                }
                for t in bits_to_indices(&uvw) {
                    if t <= w {
                        continue;
                    }
                    let count = popcount_and(&uvw, g.row(t));
                    *hist.entry(count).or_insert(0) += 1;
                    witness.entry(count).or_insert([u, v, w, t]);
                }
            }
        }
    }
    (hist, witness)
}

/// Sizes of all maximal cliques of size at least `size_floor`, as a
/// multiset, via pivoting Bron-Kerbosch. The floor both limits the output
/// and prunes branches that cannot reach it.
pub fn maximal_clique_sizes(g: &Graph, size_floor: usize) -> BTreeMap<usize, u64> {
    clique_scan(g, size_floor).0
}

/// Clique-size multiset plus one witness clique per size.
pub fn clique_scan(
    g: &Graph,
    size_floor: usize,
) -> (BTreeMap<usize, u64>, BTreeMap<usize, Vec<usize>>) {
    let words = g.words();
    let mut p = vec![u64::MAX; words];
    if g.n() % 64 != 0 {
        p[words - 1] = (1u64 << (g.n() % 64)) - 1;
    }
    if g.n() == 0 {
        p.clear();
    }
    let x = vec![0u64; words];
    let mut hist = BTreeMap::new();
    let mut witness = BTreeMap::new();
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, p, x, size_floor, &mut hist, &mut witness);
    (hist, witness)
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: Vec<u64>,
    x: Vec<u64>,
    floor: usize,
    hist: &mut BTreeMap<usize, u64>,
    witness: &mut BTreeMap<usize, Vec<usize>>,
) {
    let p_count: usize = p.iter().map(|w| w.count_ones() as usize).sum();
    if p_count == 0 {
        if x.iter().all(|&w| w == 0) && r.len() >= floor {
            *hist.entry(r.len()).or_insert(0) += 1;
            witness.entry(r.len()).or_insert_with(|| r.clone());
        }
        return;
    }
    if r.len() + p_count < floor {
        return;
    }
    // pivot: the candidate (in P ∪ X) covering most of P
    let mut pivot = usize::MAX;
    let mut best = usize::MAX;
    for cand in bits_to_indices(&p).into_iter().chain(bits_to_indices(&x)) {
        let uncovered = p_count - popcount_and(&p, g.row(cand));
        if uncovered < best {
            best = uncovered;
            pivot = cand;
        }
    }
    let mut todo = p.clone();
    if pivot != usize::MAX {
        for (slot, w) in todo.iter_mut().zip(g.row(pivot)) {
            *slot &= !w;
        }
    }
    let mut p = p;
    let mut x = x;
    for v in bits_to_indices(&todo) {
        let row = g.row(v);
        let next_p: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
        let next_x: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(g, r, next_p, next_x, floor, hist, witness);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}
