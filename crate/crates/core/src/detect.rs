//! Exact detection of Berge and induced Berge copies of a pattern graph.
//!
//! Both searches enumerate injective base maps `V(F) -> V(H)`, assigning
//! pattern vertices in descending degree order (ties by id) and host
//! vertices in ascending id, so returned certificates are deterministic.
//!
//! * Berge: once the base map is complete, each pattern edge needs its own
//!   hyperedge containing the mapped pair. Candidate sets overlap, so this is
//!   decided by a bipartite matching.
//! * Induced: once the base set `W` is fixed, a hyperedge can only serve the
//!   pattern edge equal to its trace `f ∩ W`, and distinct pattern edges have
//!   distinct pairs. Any choice of one hyperedge with trace exactly `{x, y}`
//!   per pattern edge is automatically injective, so no matching is needed.
//!   Traces only grow as `W` grows, which lets the search prune on partial maps.
//!
//! The kernels work on packed edge masks and need `n <= 64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::hypergraph::{Hypergraph, Vertex, PACKED_LIMIT};
use crate::matching::saturating_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Berge,
    Induced,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Berge => "berge",
            Mode::Induced => "induced",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "berge" => Ok(Mode::Berge),
            "induced" => Ok(Mode::Induced),
            _ => Err(Error::Parameter(format!("unknown mode {s:?}"))),
        }
    }
}

/// Witness of (induced) Berge containment.
///
/// `base_map[i]` is the host image of pattern vertex `i + 1`; `edge_map[j]`
/// is the hyperedge assigned to the `j`-th pattern edge in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCertificate {
    pub mode: Mode,
    pub base_map: Vec<Vertex>,
    pub edge_map: Vec<Vec<Vertex>>,
}

impl BergeCertificate {
    /// The base vertex set `W`, sorted.
    pub fn base_set(&self) -> Vec<Vertex> {
        let mut w = self.base_map.clone();
        w.sort_unstable();
        w
    }
}

/// Strips isolated vertices and rejects edgeless patterns. The second value
/// is a notice for the run report when vertices were dropped.
pub fn normalize_pattern(f: &PatternGraph) -> Result<(PatternGraph, Option<String>)> {
    if f.size() == 0 {
        return Err(Error::Pattern(
            "(induced) Berge containment is undefined for a pattern without edges".into(),
        ));
    }
    if !f.has_isolated_vertices() {
        return Ok((f.clone(), None));
    }
    let stripped = f.strip_isolated();
    let notice = format!(
        "pattern had {} isolated vertices; detection uses the stripped pattern on {} vertices",
        f.order() - stripped.order(),
        stripped.order()
    );
    Ok((stripped, Some(notice)))
}

/// A pattern preprocessed for the search kernels (0-based vertices).
#[derive(Debug, Clone)]
pub(crate) struct Prepared {
    t: usize,
    edges: Vec<(usize, usize)>,
    deg: Vec<usize>,
    order: Vec<usize>,
    incident: Vec<Vec<usize>>,
}

impl Prepared {
    pub(crate) fn new(f: &PatternGraph) -> Result<Self> {
        if f.size() == 0 {
            return Err(Error::Pattern("pattern has no edges".into()));
        }
        if f.has_isolated_vertices() {
            return Err(Error::Pattern(
                "pattern has isolated vertices; normalize it first".into(),
            ));
        }
        let t = f.order();
        let edges: Vec<(usize, usize)> = f.edges().map(|(a, b)| (a - 1, b - 1)).collect();
        let mut incident = vec![Vec::new(); t];
        for (j, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(j);
            incident[b].push(j);
        }
        let deg: Vec<usize> = incident.iter().map(Vec::len).collect();
        let mut order: Vec<usize> = (0..t).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        Ok(Prepared {
            t,
            edges,
            deg,
            order,
            incident,
        })
    }

    fn pair_mask(&self, map: &[usize], j: usize) -> u64 {
        let (a, b) = self.edges[j];
        1 << map[a] | 1 << map[b]
    }
}

const UNMAPPED: usize = usize::MAX;

struct Kernel<'a> {
    edges: &'a [u64],
    n: usize,
    host_deg: Vec<usize>,
    pat: &'a Prepared,
    mode: Mode,
    map: Vec<usize>,
    used: u64,
    /// Host vertices unavailable to non-anchor pattern vertices.
    forbidden: u64,
    /// (pattern edge, host edge) pinned together.
    forced: Option<(usize, usize)>,
}

impl<'a> Kernel<'a> {
    fn new(edges: &'a [u64], n: usize, pat: &'a Prepared, mode: Mode) -> Self {
        let mut host_deg = vec![0; n];
        for &e in edges {
            let mut m = e;
            while m != 0 {
                host_deg[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        Kernel {
            edges,
            n,
            host_deg,
            pat,
            mode,
            map: vec![UNMAPPED; pat.t],
            used: 0,
            forbidden: 0,
            forced: None,
        }
    }

    fn exists_edge_with_trace(&self, pair: u64, base: u64) -> bool {
        self.edges.iter().any(|&e| e & base == pair)
    }

    /// Whether the partial map stays extendable after mapping `v`.
    fn consistent(&self, v: usize) -> bool {
        match self.mode {
            Mode::Berge => self.pat.incident[v].iter().all(|&j| {
                let (a, b) = self.pat.edges[j];
                let u = if a == v { b } else { a };
                if self.map[u] == UNMAPPED {
                    return true;
                }
                let p = self.pat.pair_mask(&self.map, j);
                self.edges.iter().any(|&e| e & p == p)
            }),
            Mode::Induced => (0..self.pat.edges.len()).all(|j| {
                let (a, b) = self.pat.edges[j];
                if self.map[a] == UNMAPPED || self.map[b] == UNMAPPED {
                    return true;
                }
                self.exists_edge_with_trace(self.pat.pair_mask(&self.map, j), self.used)
            }),
        }
    }

    fn dfs(&mut self, pos: usize) -> Option<Vec<usize>> {
        if pos == self.pat.t {
            return self.assign_edges();
        }
        let v = self.pat.order[pos];
        if self.map[v] != UNMAPPED {
            return self.dfs(pos + 1);
        }
        for w in 0..self.n {
            let bit = 1u64 << w;
            if self.used & bit != 0 || self.forbidden & bit != 0 || self.host_deg[w] < self.pat.deg[v] {
                continue;
            }
            self.map[v] = w;
            self.used |= bit;
            if self.consistent(v) {
                if let Some(found) = self.dfs(pos + 1) {
                    return Some(found);
                }
            }
            self.used &= !bit;
            self.map[v] = UNMAPPED;
        }
        None
    }

    fn assign_edges(&self) -> Option<Vec<usize>> {
        let q = self.pat.edges.len();
        match self.mode {
            Mode::Induced => (0..q)
                .map(|j| match self.forced {
                    Some((fj, fh)) if fj == j => Some(fh),
                    _ => {
                        let p = self.pat.pair_mask(&self.map, j);
                        self.edges.iter().position(|&e| e & self.used == p)
                    }
                })
                .collect(),
            Mode::Berge => {
                let left: Vec<usize> = (0..q).filter(|&j| !matches!(self.forced, Some((fj, _)) if fj == j)).collect();
                let adj: Vec<Vec<usize>> = left
                    .iter()
                    .map(|&j| {
                        let p = self.pat.pair_mask(&self.map, j);
                        (0..self.edges.len())
                            .filter(|&h| self.edges[h] & p == p)
                            .filter(|&h| !matches!(self.forced, Some((_, fh)) if fh == h))
                            .collect()
                    })
                    .collect();
                let mate = saturating_matching(&adj, self.edges.len())?;
                let mut out = vec![0; q];
                for (i, &j) in left.iter().enumerate() {
                    out[j] = mate[i];
                }
                if let Some((fj, fh)) = self.forced {
                    out[fj] = fh;
                }
                Some(out)
            }
        }
    }

    fn run(&mut self) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.pat.t > self.n {
            return None;
        }
        let edge_map = self.dfs(0)?;
        Some((self.map.clone(), edge_map))
    }

    /// Searches only for copies that use host edge `must`.
    fn run_through(&mut self, must: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.pat.t > self.n {
            return None;
        }
        let host = self.edges[must];
        let verts: Vec<usize> = (0..self.n).filter(|&w| host >> w & 1 == 1).collect();
        for j in 0..self.pat.edges.len() {
            let (a, b) = self.pat.edges[j];
            for &p in &verts {
                for &q in &verts {
                    if p == q || self.host_deg[p] < self.pat.deg[a] || self.host_deg[q] < self.pat.deg[b] {
                        continue;
                    }
                    self.map.iter_mut().for_each(|m| *m = UNMAPPED);
                    self.map[a] = p;
                    self.map[b] = q;
                    self.used = 1 << p | 1 << q;
                    self.forced = Some((j, must));
                    self.forbidden = match self.mode {
                        // the pinned edge must keep trace exactly {p, q}
                        Mode::Induced => host,
                        Mode::Berge => 0,
                    };
                    if let Some(edge_map) = self.dfs(0) {
                        return Some((self.map.clone(), edge_map));
                    }
                }
            }
        }
        None
    }
}

fn packed(h: &Hypergraph) -> Result<&[u64]> {
    h.masks().ok_or_else(|| {
        Error::Size(format!(
            "detection needs a packed host with n <= {PACKED_LIMIT}, got n = {}",
            h.n()
        ))
    })
}

fn certificate(h: &Hypergraph, mode: Mode, map: Vec<usize>, edge_map: Vec<usize>) -> BergeCertificate {
    BergeCertificate {
        mode,
        base_map: map.into_iter().map(|w| w + 1).collect(),
        edge_map: edge_map.into_iter().map(|i| h.edges()[i].clone()).collect(),
    }
}

/// Finds a copy of `f` in `h` in the given mode. `f` must be normalized.
pub fn find(h: &Hypergraph, f: &PatternGraph, mode: Mode) -> Result<Option<BergeCertificate>> {
    let pat = Prepared::new(f)?;
    let edges = packed(h)?;
    let found = Kernel::new(edges, h.n(), &pat, mode).run();
    Ok(found.map(|(map, em)| certificate(h, mode, map, em)))
}

pub fn find_berge(h: &Hypergraph, f: &PatternGraph) -> Result<Option<BergeCertificate>> {
    find(h, f, Mode::Berge)
}

pub fn find_induced_berge(h: &Hypergraph, f: &PatternGraph) -> Result<Option<BergeCertificate>> {
    find(h, f, Mode::Induced)
}

/// Like [`find`], restricted to copies whose edge map uses edge `edge_index` of `h`.
pub fn find_through(
    h: &Hypergraph,
    f: &PatternGraph,
    mode: Mode,
    edge_index: usize,
) -> Result<Option<BergeCertificate>> {
    if edge_index >= h.len() {
        return Err(Error::Parameter(format!("edge index {edge_index} out of range")));
    }
    let pat = Prepared::new(f)?;
    let edges = packed(h)?;
    let found = Kernel::new(edges, h.n(), &pat, mode).run_through(edge_index);
    Ok(found.map(|(map, em)| certificate(h, mode, map, em)))
}

/// Packed-mask entry point for the extremal search.
pub(crate) fn contains_through(edges: &[u64], n: usize, pat: &Prepared, mode: Mode, must: usize) -> bool {
    Kernel::new(edges, n, pat, mode).run_through(must).is_some()
}

/// Checks every certificate invariant against `h` and `f`. Never panics on
/// malformed certificates.
pub fn verify_certificate(h: &Hypergraph, f: &PatternGraph, c: &BergeCertificate) -> bool {
    if c.base_map.len() != f.order() || c.edge_map.len() != f.size() {
        return false;
    }
    let mut base = c.base_map.clone();
    base.sort_unstable();
    if base.iter().any(|&w| w == 0 || w > h.n()) || base.windows(2).any(|p| p[0] == p[1]) {
        return false;
    }
    let mut assigned = Vec::with_capacity(c.edge_map.len());
    for e in &c.edge_map {
        let mut e = e.clone();
        e.sort_unstable();
        if !h.contains_edge(&e) {
            return false;
        }
        assigned.push(e);
    }
    let mut distinct = assigned.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != assigned.len() {
        return false;
    }
    f.edges().zip(&assigned).all(|((a, b), e)| {
        let (wa, wb) = (c.base_map[a - 1], c.base_map[b - 1]);
        match c.mode {
            Mode::Berge => e.contains(&wa) && e.contains(&wb),
            Mode::Induced => {
                let mut trace: Vec<Vertex> = e.iter().copied().filter(|v| base.binary_search(v).is_ok()).collect();
                trace.sort_unstable();
                trace == [wa.min(wb), wa.max(wb)]
            }
        }
    })
}

/// A strongly representable subfamily: every member owns a private element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StronglyRepresentable {
    pub members: Vec<Vec<Vertex>>,
    /// `representatives[i]` lies in `members[i]` and in no other member.
    pub representatives: Vec<Vertex>,
}

/// Finds `s` members of `family` with distinct private representatives.
/// Subfamilies are tried in lexicographic order of member indices.
pub fn find_strongly_representable(family: &[Vec<Vertex>], s: usize) -> Option<StronglyRepresentable> {
    fn minus(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
        a.iter().copied().filter(|x| !b.contains(x)).collect()
    }

    fn rec(
        family: &[Vec<Vertex>],
        s: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        private: &mut Vec<Vec<Vertex>>,
    ) -> bool {
        if chosen.len() == s {
            return true;
        }
        for i in start..family.len() {
            if chosen.len() + (family.len() - i) < s {
                break;
            }
            let g = &family[i];
            let mut own = g.clone();
            for &c in chosen.iter() {
                own = minus(&own, &family[c]);
            }
            if own.is_empty() {
                continue;
            }
            let shrunk: Vec<Vec<Vertex>> = private.iter().map(|p| minus(p, g)).collect();
            if shrunk.iter().any(Vec::is_empty) {
                continue;
            }
            let saved = std::mem::replace(private, shrunk);
            private.push(own);
            chosen.push(i);
            if rec(family, s, i + 1, chosen, private) {
                return true;
            }
            chosen.pop();
            *private = saved;
        }
        false
    }

    let mut chosen = Vec::new();
    let mut private = Vec::new();
    if !rec(family, s, 0, &mut chosen, &mut private) {
        return None;
    }
    Some(StronglyRepresentable {
        members: chosen.iter().map(|&i| family[i].clone()).collect(),
        representatives: private.iter().map(|p| *p.iter().min().expect("nonempty")).collect(),
    })
}
