//! Definition-level oracles shared by the integration tests. Nothing here
//! calls the detection kernels.

#![allow(dead_code)]

use berge_core::{Hypergraph, PatternGraph, Vertex};
use rand::Rng;

/// Brute force over every injection of the pattern and every assignment of
/// distinct hyperedges.
pub fn naive_contains(h: &Hypergraph, f: &PatternGraph, induced: bool) -> bool {
    let t = f.order();
    let fedges: Vec<(Vertex, Vertex)> = f.edges().collect();
    let mut map = vec![0; t + 1];
    let mut used = vec![false; h.n() + 1];

    fn assign(cands: &[Vec<usize>], j: usize, taken: &mut Vec<usize>) -> bool {
        if j == cands.len() {
            return true;
        }
        for &e in &cands[j] {
            if !taken.contains(&e) {
                taken.push(e);
                if assign(cands, j + 1, taken) {
                    return true;
                }
                taken.pop();
            }
        }
        false
    }

    fn place(
        h: &Hypergraph,
        fedges: &[(Vertex, Vertex)],
        induced: bool,
        v: usize,
        t: usize,
        map: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v > t {
            let base: Vec<Vertex> = map[1..].to_vec();
            let cands: Vec<Vec<usize>> = fedges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (map[a], map[b]);
                    (0..h.len())
                        .filter(|&i| {
                            let e = &h.edges()[i];
                            e.contains(&x)
                                && e.contains(&y)
                                && (!induced || base.iter().filter(|w| e.contains(w)).count() == 2)
                        })
                        .collect()
                })
                .collect();
            return assign(&cands, 0, &mut Vec::new());
        }
        for w in 1..=h.n() {
            if !used[w] {
                used[w] = true;
                map[v] = w;
                if place(h, fedges, induced, v + 1, t, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }

    place(h, &fedges, induced, 1, t, &mut map, &mut used)
}

pub fn random_hypergraph(rng: &mut impl Rng, r: usize, n: usize, p: f64) -> Hypergraph {
    let all: Vec<Vertex> = (1..=n).collect();
    let mut edges = Vec::new();
    berge_core::hypergraph::for_each_subset(&all, r, |e| {
        if rng.gen_bool(p) {
            edges.push(e.to_vec());
        }
    });
    Hypergraph::new(r, n, edges).unwrap()
}

/// A random r-partite r-graph: random part labels, random transversal edges.
pub fn random_partite(rng: &mut impl Rng, r: usize, n: usize, p: f64) -> (Hypergraph, berge_core::Partition) {
    let mut part_of: Vec<usize> = (0..n).map(|i| if i < r { i + 1 } else { rng.gen_range(1..=r) }).collect();
    // shuffle so the guaranteed representatives are not always 1..r
    for i in (1..n).rev() {
        part_of.swap(i, rng.gen_range(0..=i));
    }
    let parts = berge_core::Partition::new(r, part_of).unwrap();
    let all: Vec<Vertex> = (1..=n).collect();
    let mut edges = Vec::new();
    berge_core::hypergraph::for_each_subset(&all, r, |e| {
        let mut seen: Vec<usize> = e.iter().map(|&v| parts.part_of(v)).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() == r && rng.gen_bool(p) {
            edges.push(e.to_vec());
        }
    });
    (Hypergraph::new(r, n, edges).unwrap(), parts)
}

/// Every labeled tree on `n >= 2` vertices, from Prufer sequences.
pub fn all_trees(n: usize) -> Vec<PatternGraph> {
    if n == 2 {
        return vec![PatternGraph::complete(2)];
    }
    let mut out = Vec::new();
    let len = n - 2;
    let total = n.pow(len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n + 1);
            c /= n;
        }
        let mut degree = vec![1usize; n + 1];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<Vertex> = (1..=n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(PatternGraph::new(n, edges).unwrap());
    }
    out
}

/// Isomorphism by trying every bijection.
pub fn isomorphic(a: &PatternGraph, b: &PatternGraph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    fn rec(a: &PatternGraph, b: &PatternGraph, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if v > a.order() {
            return a.edges().all(|(x, y)| b.adjacent(map[x], map[y]));
        }
        for w in 1..=b.order() {
            if !used[w] {
                used[w] = true;
                map[v] = w;
                if rec(a, b, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    rec(a, b, 1, &mut vec![0; a.order() + 1], &mut vec![false; b.order() + 1])
}

/// Largest number of edges over all triangle-free graphs on `n` vertices.
pub fn brute_triangle_free_max(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    let mut best = 0;
    for bits in 0u64..1 << pairs.len() {
        let m = bits.count_ones() as u64;
        if m <= best {
            continue;
        }
        let mut adj = vec![0u32; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if bits >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if pairs.iter().enumerate().all(|(i, &(a, b))| bits >> i & 1 == 0 || adj[a] & adj[b] == 0) {
            best = m;
        }
    }
    best
}
