//! The class of graphs grown from `K2` by repeatedly adding a vertex joined
//! to both ends of an existing edge (every member on `t` vertices has
//! `2t - 3` edges), and membership of arbitrary graphs as spanning subgraphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::hypergraph::Vertex;

pub const DEFAULT_GT_CAP: usize = 9;

/// Largest order the canonical code can encode (`C(11, 2) = 55` bits).
pub const CANONICAL_LIMIT: usize = 11;

/// One apex addition: `apex` joined to both ends of the existing edge `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexStep {
    pub apex: Vertex,
    pub base: (Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtMember {
    pub graph: PatternGraph,
    /// Apex additions starting from `K2` on vertices 1, 2.
    pub trace: Vec<ApexStep>,
}

impl GtMember {
    pub fn k2() -> Self {
        GtMember {
            graph: PatternGraph::complete(2),
            trace: Vec::new(),
        }
    }

    /// Rebuilds the graph from the trace, checking every step.
    pub fn replay(&self) -> Result<PatternGraph> {
        let mut g = PatternGraph::complete(2);
        for step in &self.trace {
            if step.apex != g.order() + 1 {
                return Err(Error::Structure(format!("apex {} is not the next vertex", step.apex)));
            }
            g = f_plus(&g, step.base)?;
        }
        Ok(g)
    }
}

/// `f` plus a new vertex `t + 1` adjacent to exactly `x` and `y`.
pub fn f_plus(f: &PatternGraph, (x, y): (Vertex, Vertex)) -> Result<PatternGraph> {
    if !f.adjacent(x, y) {
        return Err(Error::Parameter(format!("{{{x}, {y}}} is not an edge of the pattern")));
    }
    let z = f.order() + 1;
    PatternGraph::new(z, f.edges().chain([(x, z), (y, z)]))
}

/// Canonical code of a graph: the lexicographically smallest upper-triangle
/// adjacency bit string over all vertex orderings. Bits are taken column by
/// column (`(0,1), (0,2), (1,2), (0,3), ...`), most significant first, which
/// lets partial orderings be pruned against the best code found so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub order: usize,
    pub code: u64,
}

pub fn canonical_form(g: &PatternGraph) -> CanonicalForm {
    let t = g.order();
    assert!(t <= CANONICAL_LIMIT, "canonical form supports at most {CANONICAL_LIMIT} vertices");
    let adj: Vec<u16> = (1..=t)
        .map(|v| g.neighbors(v).fold(0u16, |m, u| m | 1 << (u - 1)))
        .collect();
    let total = t * t.saturating_sub(1) / 2;

    struct State<'a> {
        adj: &'a [u16],
        t: usize,
        total: usize,
        perm: Vec<usize>,
        used: u16,
        best: u64,
    }

    fn rec(s: &mut State<'_>, code: u64, bits: usize) {
        let j = s.perm.len();
        if j == s.t {
            s.best = s.best.min(code);
            return;
        }
        for v in 0..s.t {
            if s.used >> v & 1 == 1 {
                continue;
            }
            let mut c = code;
            for &u in &s.perm {
                c = c << 1 | u64::from(s.adj[v] >> u & 1);
            }
            let nbits = bits + j;
            if s.total > 0 && c > s.best >> (s.total - nbits) {
                continue;
            }
            s.perm.push(v);
            s.used |= 1 << v;
            rec(s, c, nbits);
            s.used &= !(1 << v);
            s.perm.pop();
        }
    }

    let mut state = State {
        adj: &adj,
        t,
        total,
        perm: Vec::with_capacity(t),
        used: 0,
        best: u64::MAX,
    };
    rec(&mut state, 0, 0);
    CanonicalForm {
        order: t,
        code: if total == 0 { 0 } else { state.best },
    }
}

pub fn generate_gt(t: usize) -> Result<Vec<GtMember>> {
    generate_gt_capped(t, DEFAULT_GT_CAP)
}

/// All members on `t` vertices up to isomorphism, in discovery order:
/// every member on `t - 1` vertices is expanded over each of its edges and
/// isomorphic duplicates are dropped by canonical form.
pub fn generate_gt_capped(t: usize, cap: usize) -> Result<Vec<GtMember>> {
    if t < 2 {
        return Err(Error::Parameter(format!("members have at least 2 vertices, got t = {t}")));
    }
    if t > cap || t > CANONICAL_LIMIT {
        return Err(Error::Size(format!("t = {t} exceeds the cap {}", cap.min(CANONICAL_LIMIT))));
    }
    let mut level = vec![GtMember::k2()];
    for _ in 3..=t {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for member in &level {
            for (x, y) in member.graph.edges() {
                let graph = f_plus(&member.graph, (x, y))?;
                if seen.insert(canonical_form(&graph)) {
                    let mut trace = member.trace.clone();
                    trace.push(ApexStep {
                        apex: graph.order(),
                        base: (x, y),
                    });
                    next.push(GtMember { graph, trace });
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// An injection `V(small) -> V(host)` mapping edges to edges, if any.
/// `result[v - 1]` is the image of `v`.
pub fn subgraph_embed(small: &PatternGraph, host: &PatternGraph) -> Option<Vec<Vertex>> {
    let t = small.order();
    if t > host.order() || small.size() > host.size() {
        return None;
    }
    let mut order: Vec<Vertex> = (1..=t).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(small.degree(v)), v));
    let mut map = vec![0; t + 1];
    let mut used = vec![false; host.order() + 1];

    fn rec(
        small: &PatternGraph,
        host: &PatternGraph,
        order: &[Vertex],
        pos: usize,
        map: &mut [Vertex],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for w in 1..=host.order() {
            if used[w] || host.degree(w) < small.degree(v) {
                continue;
            }
            if small.neighbors(v).any(|u| map[u] != 0 && !host.adjacent(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if rec(small, host, order, pos + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = 0;
        }
        false
    }

    rec(small, host, &order, 0, &mut map, &mut used).then(|| map[1..].to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtMembership {
    /// The queried graph with isolated vertices removed.
    pub pattern: PatternGraph,
    pub member: GtMember,
    /// Spanning embedding of `pattern` into `member.graph`.
    pub embedding: Vec<Vertex>,
}

pub fn is_in_gt(g: &PatternGraph) -> Result<Option<GtMembership>> {
    is_in_gt_capped(g, DEFAULT_GT_CAP)
}

/// Membership test. A graph without isolated vertices on `t >= 3` vertices
/// lies in the class iff it is a spanning subgraph of some member on exactly
/// `t` vertices, so only that level is searched.
pub fn is_in_gt_capped(g: &PatternGraph, cap: usize) -> Result<Option<GtMembership>> {
    if g.size() == 0 {
        return Err(Error::Pattern("membership is undefined for a graph without edges".into()));
    }
    let pattern = g.strip_isolated();
    let t = pattern.order();
    if pattern.size() > 2 * t - 3 {
        return Ok(None);
    }
    if pattern.chromatic_number()? > 3 {
        return Ok(None);
    }
    for member in generate_gt_capped(t, cap)? {
        if let Some(embedding) = subgraph_embed(&pattern, &member.graph) {
            return Ok(Some(GtMembership {
                pattern,
                member,
                embedding,
            }));
        }
    }
    Ok(None)
}
