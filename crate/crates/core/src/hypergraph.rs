//! Uniform hypergraphs on the vertex set `1..=n` and the basic queries on them.
//!
//! Edges are kept canonical: each edge is sorted ascending and the edge list
//! is sorted lexicographically, so two equal hypergraphs have identical
//! storage and serialize identically. When `n <= 64` every edge is also
//! packed into a `u64` vertex mask (bit `v - 1` for vertex `v`); the search
//! kernels work on those masks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest vertex count with a packed (bitset) edge representation.
pub const PACKED_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
    masks: Option<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.r, raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            r: h.r,
            n: h.n,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Builds an `r`-uniform hypergraph on `1..=n`. Edges may be given in any
    /// order; duplicate edges are rejected.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        if r == 0 {
            return Err(Error::Parameter("uniformity must be at least 1".into()));
        }
        let mut list = Vec::new();
        for edge in edges {
            let mut e: Vec<Vertex> = edge.into_iter().collect();
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::Structure(format!(
                    "edge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::Structure(format!(
                    "vertex {v} of edge {e:?} is outside 1..={n}"
                )));
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Structure(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_canonical(r, n, list))
    }

    pub fn empty(r: usize, n: usize) -> Self {
        assert!(r >= 1, "uniformity must be at least 1");
        Self::from_canonical(r, n, Vec::new())
    }

    /// Collapses duplicates instead of rejecting them; for derived families.
    pub(crate) fn from_set(r: usize, n: usize, edges: BTreeSet<Vec<Vertex>>) -> Self {
        Self::from_canonical(r, n, edges.into_iter().collect())
    }

    /// `edges` must already be canonical and valid.
    pub(crate) fn from_canonical(r: usize, n: usize, edges: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let masks = (n <= PACKED_LIMIT).then(|| edges.iter().map(|e| vertex_mask(e)).collect());
        Hypergraph { r, n, edges, masks }
    }

    /// Builds a hypergraph from packed edge masks (requires `n <= 64`).
    pub fn from_masks(r: usize, n: usize, masks: &[u64]) -> Result<Self> {
        if n > PACKED_LIMIT {
            return Err(Error::Size(format!("packed edges need n <= {PACKED_LIMIT}")));
        }
        Self::new(r, n, masks.iter().map(|&m| mask_vertices(m)))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    /// Packed edge masks, present iff `n <= 64`.
    pub fn masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub fn index_of(&self, edge: &[Vertex]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.index_of(edge).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.codegree(&[v])
    }

    /// Number of edges containing every vertex of `set`.
    pub fn codegree(&self, set: &[Vertex]) -> usize {
        if let Some(masks) = &self.masks {
            if set.iter().all(|&v| (1..=self.n).contains(&v)) {
                let s = vertex_mask(set);
                return masks.iter().filter(|&&m| m & s == s).count();
            }
            return 0;
        }
        self.edges.iter().filter(|e| is_subset(set, e)).count()
    }

    /// The `s`-shadow: all `s`-sets contained in some edge.
    pub fn shadow(&self, s: usize) -> Result<Hypergraph> {
        if s == 0 || s > self.r {
            return Err(Error::Parameter(format!(
                "shadow level {s} outside 1..={}",
                self.r
            )));
        }
        let mut out = BTreeSet::new();
        for e in &self.edges {
            for_each_subset(e, s, |sub| {
                out.insert(sub.to_vec());
            });
        }
        Ok(Hypergraph::from_set(s, self.n, out))
    }

    pub fn is_r_partite(&self, parts: &Partition) -> bool {
        if parts.k() != self.r || parts.n() != self.n {
            return false;
        }
        self.edges.iter().all(|e| {
            let mut seen = vec![false; parts.k() + 1];
            e.iter().all(|&v| !std::mem::replace(&mut seen[parts.part_of(v)], true))
        })
    }

    /// `{ e \ V_s : e in H }` as a set; the result is `(r-1)`-uniform.
    pub fn trace_minus_part(&self, parts: &Partition, s: usize) -> Result<Hypergraph> {
        if parts.k() != self.r {
            return Err(Error::Structure(format!(
                "partition has {} parts, hypergraph is {}-uniform",
                parts.k(),
                self.r
            )));
        }
        if s == 0 || s > parts.k() {
            return Err(Error::Parameter(format!("part index {s} outside 1..={}", parts.k())));
        }
        if self.r < 2 {
            return Err(Error::Uniformity("trace needs r >= 2".into()));
        }
        if !self.is_r_partite(parts) {
            return Err(Error::Structure("hypergraph is not r-partite under the partition".into()));
        }
        let out = self
            .edges
            .iter()
            .map(|e| e.iter().copied().filter(|&v| parts.part_of(v) != s).collect())
            .collect();
        Ok(Hypergraph::from_set(self.r - 1, self.n, out))
    }

    /// The subfamily of edges whose index satisfies `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &[Vertex]) -> bool) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(_, e)| e.clone())
            .collect();
        Hypergraph::from_canonical(self.r, self.n, edges)
    }

    /// Relabels vertices by `perm` (`perm[v - 1]` is the new label of `v`).
    pub fn relabel(&self, perm: &[Vertex]) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v - 1]).collect::<Vec<_>>());
        Hypergraph::new(self.r, self.n, edges).expect("relabeling by a permutation stays valid")
    }
}

/// A partition of `1..=n` into `k` labeled parts `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    k: usize,
    part_of: Vec<usize>,
}

impl Partition {
    /// `part_of[v - 1]` is the part of vertex `v`.
    pub fn new(k: usize, part_of: Vec<usize>) -> Result<Self> {
        if let Some((i, &p)) = part_of.iter().enumerate().find(|(_, &p)| p == 0 || p > k) {
            return Err(Error::Structure(format!(
                "vertex {} has part index {p} outside 1..={k}",
                i + 1
            )));
        }
        Ok(Partition { k, part_of })
    }

    /// Builds a partition from explicit parts, which must cover `1..=n` exactly once.
    pub fn from_parts(n: usize, parts: &[Vec<Vertex>]) -> Result<Self> {
        let mut part_of = vec![0; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v == 0 || v > n {
                    return Err(Error::Structure(format!("vertex {v} outside 1..={n}")));
                }
                if part_of[v - 1] != 0 {
                    return Err(Error::Structure(format!("vertex {v} is in two parts")));
                }
                part_of[v - 1] = i + 1;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == 0) {
            return Err(Error::Structure(format!("vertex {} is in no part", v + 1)));
        }
        Ok(Partition { k: parts.len(), part_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v - 1]
    }

    pub fn parts(&self) -> Vec<Vec<Vertex>> {
        let mut parts = vec![Vec::new(); self.k];
        for (i, &p) in self.part_of.iter().enumerate() {
            parts[p - 1].push(i + 1);
        }
        parts
    }
}

pub fn vertex_mask(set: &[Vertex]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << (v - 1))
}

pub fn mask_vertices(mut mask: u64) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize + 1);
        mask &= mask - 1;
    }
    out
}

/// Both slices sorted ascending.
pub fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.by_ref().any(|w| w == v))
}

/// Calls `f` on every `k`-subset of the sorted slice `items`, in lexicographic order.
pub fn for_each_subset(items: &[Vertex], k: usize, mut f: impl FnMut(&[Vertex])) {
    fn rec(items: &[Vertex], k: usize, start: usize, buf: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            buf.push(items[i]);
            rec(items, k, i + 1, buf, f);
            buf.pop();
        }
    }
    if k > items.len() {
        return;
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut f);
}

/// All `k`-subsets of `1..=n` as masks in colex order (ascending mask value).
pub fn colex_subsets(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= PACKED_LIMIT);
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut m: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 {
            break;
        }
        let next = (((r ^ m) >> 2) / c) | r;
        if n < 64 && next >> n != 0 {
            break;
        }
        m = next;
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
