//! Explicit hypergraph families used as lower bounds, and extraction of a
//! large r-partite subfamily.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, for_each_subset, Hypergraph, Partition, Vertex};

pub const DEFAULT_SEED: u64 = 0x5eed;

fn check_fits(n: usize, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::Parameter("uniformity must be at least 1".into()));
    }
    if n < r {
        return Err(Error::Size(format!("n = {n} is smaller than r = {r}")));
    }
    Ok(())
}

/// `floor(n / r)` disjoint edges `{1..r}, {r+1..2r}, ...`.
pub fn matching_construction(n: usize, r: usize) -> Result<Hypergraph> {
    check_fits(n, r)?;
    let edges = (0..n / r).map(|i| (i * r + 1..=(i + 1) * r).collect::<Vec<_>>());
    Hypergraph::new(r, n, edges)
}

/// All edges `{1..r-1} + {x}` for `x` in `r..=n`.
pub fn sunflower_construction(n: usize, r: usize) -> Result<Hypergraph> {
    check_fits(n, r)?;
    let edges = (r..=n).map(|x| (1..r).chain([x]).collect::<Vec<_>>());
    Hypergraph::new(r, n, edges)
}

fn complete_on(block: &[Vertex], r: usize, out: &mut Vec<Vec<Vertex>>) {
    for_each_subset(block, r, |e| out.push(e.to_vec()));
}

/// Disjoint complete r-graphs on consecutive blocks of `r + t - 3` vertices;
/// the last block holds the remaining `n mod (r + t - 3)` vertices.
pub fn star_clique_construction(n: usize, r: usize, t: usize) -> Result<Hypergraph> {
    if r < 2 || t < 3 {
        return Err(Error::Parameter(format!("need r >= 2 and t >= 3, got r = {r}, t = {t}")));
    }
    let m = r + t - 3;
    let mut edges = Vec::new();
    let mut start = 1;
    while start <= n {
        let block: Vec<Vertex> = (start..=(start + m - 1).min(n)).collect();
        complete_on(&block, r, &mut edges);
        start += m;
    }
    Hypergraph::new(r, n, edges)
}

/// Adds vertex `n + 1` to every edge.
pub fn lift_construction(h: &Hypergraph) -> Hypergraph {
    let v = h.n() + 1;
    let edges = h.edges().iter().map(|e| e.iter().copied().chain([v]).collect::<Vec<_>>());
    Hypergraph::new(h.r() + 1, v, edges).expect("lifted edges stay distinct")
}

/// Sizes of `k` balanced parts of `n`, larger parts first.
pub fn balanced_parts(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut parts = Vec::with_capacity(k);
    let mut next = 1;
    for i in 0..k {
        let size = n / k + usize::from(i < n % k);
        parts.push((next..next + size).collect());
        next += size;
    }
    parts
}

/// All r-sets meeting each of `k` balanced parts at most once.
pub fn complete_multipartite_construction(n: usize, r: usize, k: usize) -> Result<Hypergraph> {
    if r == 0 {
        return Err(Error::Parameter("uniformity must be at least 1".into()));
    }
    if k < r {
        return Err(Error::Parameter(format!("k = {k} parts cannot host r = {r} vertices per edge")));
    }
    let parts = Partition::from_parts(n, &balanced_parts(n, k))?;
    let all: Vec<Vertex> = (1..=n).collect();
    let mut edges = Vec::new();
    for_each_subset(&all, r, |e| {
        let mut seen = vec![false; k + 1];
        if e.iter().all(|&v| !std::mem::replace(&mut seen[parts.part_of(v)], true)) {
            edges.push(e.to_vec());
        }
    });
    Hypergraph::new(r, n, edges)
}

fn transversal_count(h: &Hypergraph, part_of: &[usize]) -> usize {
    h.edges()
        .iter()
        .filter(|e| {
            let mut seen = 0u64;
            e.iter().all(|&v| {
                let bit = 1u64 << part_of[v - 1];
                let fresh = seen & bit == 0;
                seen |= bit;
                fresh
            })
        })
        .count()
}

/// Moves single vertices between parts while that strictly increases the
/// number of transversal edges.
fn local_search(h: &Hypergraph, r: usize, part_of: &mut [usize]) -> usize {
    let mut best = transversal_count(h, part_of);
    loop {
        let mut improved = false;
        for v in 0..part_of.len() {
            let original = part_of[v];
            let mut choice = (best, original);
            for p in 0..r {
                if p == original {
                    continue;
                }
                part_of[v] = p;
                let c = transversal_count(h, part_of);
                if c > choice.0 {
                    choice = (c, p);
                }
            }
            part_of[v] = choice.1;
            if choice.0 > best {
                best = choice.0;
                improved = true;
            }
        }
        if !improved {
            return best;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractConfig {
    pub seed: u64,
    /// Restarts always performed (the best result is kept).
    pub min_restarts: usize,
    /// Restarts after which an unmet threshold is reported as an error.
    pub max_restarts: usize,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig {
            seed: DEFAULT_SEED,
            min_restarts: 16,
            max_restarts: 100_000,
        }
    }
}

pub fn extract_r_partite(h: &Hypergraph) -> Result<(Partition, Hypergraph)> {
    extract_r_partite_with(h, &ExtractConfig::default())
}

/// A partition into `r` parts and the edges meeting every part once, with at
/// least `r!/r^r` of all edges kept. Random partitions improved by local
/// search; stops early once every edge is kept.
pub fn extract_r_partite_with(h: &Hypergraph, config: &ExtractConfig) -> Result<(Partition, Hypergraph)> {
    let (r, n) = (h.r(), h.n());
    if r < 2 {
        return Err(Error::Uniformity("extraction needs r >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let r_pow: u128 = (0..r).fold(1, |acc, _| acc * r as u128);
    let r_fact: u128 = (1..=r as u128).product();
    let meets = |kept: usize| kept as u128 * r_pow >= r_fact * h.len() as u128;

    let mut best: Option<(usize, Vec<usize>)> = None;
    for restart in 0..config.max_restarts.max(1) {
        let mut part_of: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let kept = local_search(h, r, &mut part_of);
        if best.as_ref().map_or(true, |(b, _)| kept > *b) {
            best = Some((kept, part_of));
        }
        let top = best.as_ref().map_or(0, |b| b.0);
        if top == h.len() || (restart + 1 >= config.min_restarts && meets(top)) {
            break;
        }
    }
    let (kept, part_of) = best.expect("at least one restart");
    if !meets(kept) {
        return Err(Error::Size(format!(
            "no partition reached the r!/r^r fraction within {} restarts",
            config.max_restarts
        )));
    }
    let parts = Partition::new(r, part_of.iter().map(|p| p + 1).collect())?;
    let sub = h.filter_edges(|_, e| {
        let mut seen = vec![false; r + 1];
        e.iter().all(|&v| !std::mem::replace(&mut seen[parts.part_of(v)], true))
    });
    debug_assert_eq!(sub.len(), kept);
    Ok((parts, sub))
}

/// Closed-form edge count of [`star_clique_construction`].
pub fn star_clique_size(n: usize, r: usize, t: usize) -> u128 {
    let m = r + t - 3;
    (n / m) as u128 * binomial(m, r) + binomial(n % m, r)
}
