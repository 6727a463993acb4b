//! Exact extremal numbers at desk scale: `ex(n, K_s, F)` over graphs and
//! `ex_r(n, Berge F)` / `ex_r(n, induced Berge F)` over r-graphs.
//!
//! Both containment notions are monotone under adding edges, so a family is
//! grown by deciding candidate edges in colex order. After each inclusion,
//! remaining candidates whose addition would create a copy through them are
//! dropped, so the live candidate list always consists of individually
//! addable edges.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::detect::{contains_through, Mode, Prepared};
use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::hypergraph::{binomial, colex_subsets, Hypergraph, PACKED_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    /// Visits every free family; no bound, no symmetry reduction.
    Exhaustive,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest candidate count searched exhaustively under automatic tiering.
    pub exhaustive_cap: usize,
    /// Largest candidate count searched at all.
    pub bnb_cap: usize,
    /// Largest `n` for `ex(n, F)`.
    pub graph_n_cap: usize,
    /// Largest `n` for `ex(n, K_s, F)` with `s >= 3`.
    pub clique_n_cap: usize,
    /// `None` picks the tier from the candidate count.
    pub tier: Option<Tier>,
    pub all_witnesses: bool,
    /// Record wall-clock time in the stats (makes output non-reproducible).
    pub timing: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            exhaustive_cap: 24,
            bnb_cap: 40,
            graph_n_cap: 9,
            clique_n_cap: 8,
            tier: None,
            all_witnesses: false,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    GraphSubgraph,
    CliqueCount,
    Berge,
    InducedBerge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    pub kind: ProblemKind,
    pub n: usize,
    pub r: usize,
    pub s: Option<usize>,
    pub pattern: PatternGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub tier: Tier,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub problem: Problem,
    pub value: u64,
    /// Extremal families in canonical form, sorted.
    pub witnesses: Vec<Hypergraph>,
    pub stats: SearchStats,
}

#[derive(Clone, Copy)]
enum Objective {
    Edges,
    Cliques(usize),
}

fn cliques_within(cand: u64, k: usize, adj: &[u64]) -> u64 {
    if k == 0 {
        return 1;
    }
    let mut total = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += cliques_within(rest & adj[v], k - 1, adj);
    }
    total
}

struct Searcher<'a> {
    n: usize,
    pat: &'a Prepared,
    mode: Mode,
    objective: Objective,
    prune: bool,
    collect_all: bool,
    chosen: Vec<u64>,
    adj: Vec<u64>,
    best: Option<u64>,
    best_sets: Vec<Vec<u64>>,
    nodes: u64,
}

impl Searcher<'_> {
    fn addable(&mut self, c: u64) -> bool {
        self.chosen.push(c);
        let hit = contains_through(&self.chosen, self.n, self.pat, self.mode, self.chosen.len() - 1);
        self.chosen.pop();
        !hit
    }

    fn gain(&self, c: u64) -> u64 {
        match self.objective {
            Objective::Edges => 1,
            Objective::Cliques(s) => {
                let a = c.trailing_zeros() as usize;
                let b = 63 - c.leading_zeros() as usize;
                cliques_within(self.adj[a] & self.adj[b], s - 2, &self.adj)
            }
        }
    }

    fn bound(&self, current: u64, alive: &[u64]) -> u64 {
        match self.objective {
            Objective::Edges => current + alive.len() as u64,
            Objective::Cliques(s) => {
                let mut adj = self.adj.clone();
                for &m in alive {
                    let a = m.trailing_zeros() as usize;
                    let b = 63 - m.leading_zeros() as usize;
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
                let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
                cliques_within(all, s, &adj)
            }
        }
    }

    fn set_edge(&mut self, c: u64, on: bool) {
        if let Objective::Cliques(_) = self.objective {
            let a = c.trailing_zeros() as usize;
            let b = 63 - c.leading_zeros() as usize;
            if on {
                self.adj[a] |= 1 << b;
                self.adj[b] |= 1 << a;
            } else {
                self.adj[a] &= !(1 << b);
                self.adj[b] &= !(1 << a);
            }
        }
    }

    fn record(&mut self, current: u64) {
        match self.best {
            Some(b) if current < b => {}
            Some(b) if current == b => {
                if self.collect_all {
                    self.best_sets.push(self.chosen.clone());
                }
            }
            _ => {
                self.best = Some(current);
                self.best_sets = vec![self.chosen.clone()];
            }
        }
    }

    fn rec(&mut self, alive: &[u64], current: u64, force_first: bool) {
        self.nodes += 1;
        if alive.is_empty() {
            self.record(current);
            return;
        }
        if self.prune {
            if let Some(best) = self.best {
                let bound = self.bound(current, alive);
                if bound < best || (bound == best && !self.collect_all) {
                    return;
                }
            }
        }
        let c = alive[0];
        let rest = &alive[1..];
        let gain = self.gain(c);
        self.chosen.push(c);
        self.set_edge(c, true);
        let next: Vec<u64> = rest.iter().copied().filter(|&d| self.addable(d)).collect();
        self.rec(&next, current + gain, false);
        self.set_edge(c, false);
        self.chosen.pop();
        if !force_first {
            self.rec(rest, current, false);
        }
    }
}

/// All relabelings of `family`; returns the smallest sorted mask list.
fn canonical_masks(n: usize, family: &[u64]) -> Vec<u64> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    let mut consider = |perm: &[usize]| {
        let mut image: Vec<u64> = family
            .iter()
            .map(|&m| {
                let mut out = 0u64;
                let mut rest = m;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    out |= 1 << perm[v];
                }
                out
            })
            .collect();
        image.sort_unstable();
        if best.as_ref().map_or(true, |b| image < *b) {
            best = Some(image);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    consider(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap_or_default()
}

fn pick_tier(candidates: usize, config: &SearchConfig) -> Result<Tier> {
    if candidates > config.bnb_cap {
        return Err(Error::Size(format!(
            "{candidates} candidate edges exceed the search cap {}",
            config.bnb_cap
        )));
    }
    match config.tier {
        Some(Tier::Exhaustive) if candidates > config.exhaustive_cap => Err(Error::Size(format!(
            "{candidates} candidate edges exceed the exhaustive cap {}",
            config.exhaustive_cap
        ))),
        Some(t) => Ok(t),
        None if candidates <= config.exhaustive_cap => Ok(Tier::Exhaustive),
        None => Ok(Tier::BranchAndBound),
    }
}

fn run(
    problem: Problem,
    r: usize,
    mode: Mode,
    objective: Objective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let start = Instant::now();
    let n = problem.n;
    if n > PACKED_LIMIT {
        return Err(Error::Size(format!("n = {n} exceeds {PACKED_LIMIT}")));
    }
    let pat = Prepared::new(&problem.pattern)?;
    let count = binomial(n, r);
    let tier = pick_tier(usize::try_from(count).unwrap_or(usize::MAX), config)?;
    let candidates = colex_subsets(n, r);

    let mut s = Searcher {
        n,
        pat: &pat,
        mode,
        objective,
        prune: tier == Tier::BranchAndBound,
        collect_all: config.all_witnesses,
        chosen: Vec::new(),
        adj: vec![0; n],
        best: None,
        best_sets: Vec::new(),
        nodes: 0,
    };
    let alive: Vec<u64> = candidates.iter().copied().filter(|&c| s.addable(c)).collect();
    let force_first = s.prune && alive.first() == candidates.first();
    s.rec(&alive, 0, force_first);

    let value = s.best.unwrap_or(0);
    let mut canon = BTreeSet::new();
    for mut family in std::mem::take(&mut s.best_sets) {
        if let Objective::Cliques(_) = objective {
            // saturate: extra edges never lower the clique count
            for &c in &candidates {
                if !family.contains(&c) {
                    s.chosen = family.clone();
                    if s.addable(c) {
                        family.push(c);
                    }
                }
            }
        }
        canon.insert(canonical_masks(n, &family));
    }
    let witnesses = canon
        .into_iter()
        .map(|masks| Hypergraph::from_masks(r, n, &masks))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult {
        problem,
        value,
        witnesses,
        stats: SearchStats {
            nodes: s.nodes,
            tier,
            elapsed_ms: config.timing.then(|| start.elapsed().as_millis() as u64),
        },
    })
}

/// `ex(n, K_s, F)`: the most copies of `K_s` in an `F`-free graph on `n` vertices.
pub fn ex_clique(n: usize, s: usize, f: &PatternGraph, config: &SearchConfig) -> Result<SearchResult> {
    if s < 2 {
        return Err(Error::Parameter(format!("clique size s = {s} must be at least 2")));
    }
    let cap = if s == 2 { config.graph_n_cap } else { config.clique_n_cap };
    if n > cap {
        return Err(Error::Size(format!("n = {n} exceeds the cap {cap} for s = {s}")));
    }
    let problem = Problem {
        kind: if s == 2 { ProblemKind::GraphSubgraph } else { ProblemKind::CliqueCount },
        n,
        r: 2,
        s: Some(s),
        pattern: f.clone(),
    };
    let objective = if s == 2 { Objective::Edges } else { Objective::Cliques(s) };
    run(problem, 2, Mode::Berge, objective, config)
}

/// `ex_r(n, Berge F)` or `ex_r(n, induced Berge F)`.
pub fn ex_berge(n: usize, r: usize, f: &PatternGraph, mode: Mode, config: &SearchConfig) -> Result<SearchResult> {
    if r == 0 {
        return Err(Error::Parameter("uniformity must be at least 1".into()));
    }
    let problem = Problem {
        kind: match mode {
            Mode::Berge => ProblemKind::Berge,
            Mode::Induced => ProblemKind::InducedBerge,
        },
        n,
        r,
        s: None,
        pattern: f.clone(),
    };
    run(problem, r, mode, Objective::Edges, config)
}
