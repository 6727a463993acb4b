//! Simple graphs, used both as forbidden patterns and as 2-uniform hosts.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

pub const DEFAULT_CHROMATIC_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Hypergraph", into = "Hypergraph")]
pub struct PatternGraph {
    graph: Hypergraph,
    adj: Vec<FixedBitSet>,
    is_star: bool,
    has_isolated: bool,
}

impl TryFrom<Hypergraph> for PatternGraph {
    type Error = Error;

    fn try_from(h: Hypergraph) -> Result<Self> {
        PatternGraph::from_hypergraph(h)
    }
}

impl From<PatternGraph> for Hypergraph {
    fn from(g: PatternGraph) -> Self {
        g.graph
    }
}

impl PatternGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_hypergraph(Hypergraph::new(2, n, edges.into_iter().map(|(a, b)| [a, b]))?)
    }

    pub fn from_hypergraph(graph: Hypergraph) -> Result<Self> {
        if graph.r() != 2 {
            return Err(Error::Uniformity(format!(
                "a graph must be 2-uniform, got r = {}",
                graph.r()
            )));
        }
        let n = graph.n();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for e in graph.edges() {
            let (a, b) = (e[0] - 1, e[1] - 1);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let is_star = !graph.is_empty() && {
            let first = &graph.edges()[0];
            first
                .iter()
                .any(|v| graph.edges().iter().all(|e| e.contains(v)))
        };
        let has_isolated = adj.iter().any(|row| row.is_clear());
        Ok(PatternGraph {
            graph,
            adj,
            is_star,
            has_isolated,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_hypergraph(Hypergraph::empty(2, n)).expect("empty graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
        Self::new(n, edges).expect("complete graph")
    }

    /// The cycle on `n >= 3` vertices `1-2-...-n-1`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("cycle")
    }

    /// The path on `n` vertices (so `n - 1` edges).
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1))).expect("path")
    }

    /// `K_{1,leaves}` with center 1.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (2..=leaves + 1).map(|i| (1, i))).expect("star")
    }

    /// `k` disjoint edges.
    pub fn matching(k: usize) -> Self {
        Self::new(2 * k, (0..k).map(|i| (2 * i + 1, 2 * i + 2))).expect("matching")
    }

    /// Complete multipartite graph with the given part sizes, parts laid out consecutively.
    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let mut part = Vec::new();
        for (i, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat(i).take(s));
        }
        let n = part.len();
        let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
        let part = &part;
        Self::new(n, edges.filter(|&(a, b)| part[a - 1] != part[b - 1])).expect("multipartite")
    }

    /// Number of vertices, isolated ones included.
    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.graph.len()
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.graph.edges().iter().map(|e| (e[0], e[1]))
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        self.graph.index_of(&[a, b])
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        a != b && (1..=self.order()).contains(&a) && (1..=self.order()).contains(&b) && self.adj[a - 1][b - 1]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v - 1].ones().map(|i| i + 1)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].count_ones(..)
    }

    pub fn is_star(&self) -> bool {
        self.is_star
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.has_isolated
    }

    /// Restricts to the vertices of positive degree, relabeled `1..=t'` in increasing order.
    pub fn strip_isolated(&self) -> PatternGraph {
        if !self.has_isolated {
            return self.clone();
        }
        let mut relabel = vec![0; self.order() + 1];
        let mut next = 0;
        for v in 1..=self.order() {
            if self.degree(v) > 0 {
                next += 1;
                relabel[v] = next;
            }
        }
        Self::new(next, self.edges().map(|(a, b)| (relabel[a], relabel[b]))).expect("relabeled subgraph")
    }

    /// Number of `s`-vertex sets spanning a complete graph (`s = 1` counts vertices).
    pub fn count_cliques(&self, s: usize) -> u64 {
        fn rec(g: &PatternGraph, cands: &FixedBitSet, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            if cands.count_ones(..) < left {
                return 0;
            }
            let mut total = 0;
            for v in cands.ones() {
                let mut next = cands.clone();
                next.intersect_with(&g.adj[v]);
                next.set_range(..v + 1, false);
                total += rec(g, &next, left - 1);
            }
            total
        }
        let mut all = FixedBitSet::with_capacity(self.order());
        all.insert_range(..);
        rec(self, &all, s)
    }

    pub fn chromatic_number(&self) -> Result<usize> {
        self.chromatic_number_capped(DEFAULT_CHROMATIC_CAP)
    }

    /// Exact chromatic number by exhaustive k-coloring for ascending k.
    pub fn chromatic_number_capped(&self, cap: usize) -> Result<usize> {
        let t = self.order();
        if t > cap {
            return Err(Error::Size(format!(
                "chromatic number is computed exactly only for t <= {cap}, got {t}"
            )));
        }
        if t == 0 {
            return Ok(0);
        }
        let mut order: Vec<usize> = (0..t).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.adj[v].count_ones(..)));
        let mut color = vec![usize::MAX; t];
        Ok((1..=t)
            .find(|&k| self.colorable(&order, 0, k, 0, &mut color))
            .expect("t colors always suffice"))
    }

    fn colorable(&self, order: &[usize], i: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // colors beyond the first unused one are symmetric
        for c in 0..k.min(used + 1) {
            if self.adj[v].ones().all(|u| color[u] != c) {
                color[v] = c;
                if self.colorable(order, i + 1, k, used.max(c + 1), color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
}
