//! The alpha-core peeling decomposition and the embeddings it enables.
//!
//! Peeling repeatedly picks an `(r-1)`-set `S` whose codegree in the current
//! family is between 1 and `alpha - 1`, deletes every edge through `S`, and
//! keeps one of the deleted edges as a witness. What survives is the core:
//! every `(r-1)`-set has codegree 0 or at least `alpha` in it.
//!
//! The peel order is part of the output contract: the lexicographically
//! smallest qualifying `S` goes first, and the lexicographically smallest
//! edge through it is kept.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::detect::{verify_certificate, BergeCertificate, Mode};
use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::gt::f_plus;
use crate::hypergraph::{for_each_subset, is_subset, Hypergraph, Partition, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    #[serde(rename = "S")]
    pub set: Vec<Vertex>,
    pub removed: Vec<Vec<Vertex>>,
    pub kept: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreDecomposition {
    pub alpha: usize,
    /// The alpha-core `A`.
    pub core: Hypergraph,
    /// One kept edge per peel step (`B`).
    pub kept: Hypergraph,
    pub peel_log: Vec<PeelStep>,
}

pub fn alpha_core(h: &Hypergraph, alpha: usize) -> Result<CoreDecomposition> {
    if alpha == 0 {
        return Err(Error::Parameter("alpha must be at least 1".into()));
    }
    if h.r() < 2 {
        return Err(Error::Uniformity("alpha-core needs r >= 2".into()));
    }
    let k = h.r() - 1;
    let edges = h.edges();
    let mut through: BTreeMap<Vec<Vertex>, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for_each_subset(e, k, |s| through.entry(s.to_vec()).or_default().push(i));
    }
    let mut degree: BTreeMap<Vec<Vertex>, usize> = through.iter().map(|(s, es)| (s.clone(), es.len())).collect();
    let qualifies = |d: usize| d >= 1 && d < alpha;
    let mut pending: BTreeSet<Vec<Vertex>> = degree
        .iter()
        .filter(|(_, &d)| qualifies(d))
        .map(|(s, _)| s.clone())
        .collect();

    let mut alive = vec![true; edges.len()];
    let mut peel_log = Vec::new();
    let mut kept = Vec::new();
    while let Some(s) = pending.pop_first() {
        let removed: Vec<usize> = through[&s].iter().copied().filter(|&i| alive[i]).collect();
        debug_assert!(qualifies(removed.len()));
        for &i in &removed {
            alive[i] = false;
            for_each_subset(&edges[i], k, |t| {
                let d = degree.get_mut(t).expect("subset of an edge is indexed");
                *d -= 1;
                if qualifies(*d) {
                    pending.insert(t.to_vec());
                } else {
                    pending.remove(t);
                }
            });
        }
        kept.push(edges[removed[0]].clone());
        peel_log.push(PeelStep {
            set: s,
            removed: removed.iter().map(|&i| edges[i].clone()).collect(),
            kept: edges[removed[0]].clone(),
        });
    }

    Ok(CoreDecomposition {
        alpha,
        core: h.filter_edges(|i, _| alive[i]),
        kept: Hypergraph::new(h.r(), h.n(), kept)?,
        peel_log,
    })
}

/// Replays `peel_log` on `h`; returns the surviving family.
pub fn replay_peel_log(h: &Hypergraph, log: &[PeelStep]) -> Result<Hypergraph> {
    let mut current: BTreeSet<Vec<Vertex>> = h.edges().iter().cloned().collect();
    for (i, step) in log.iter().enumerate() {
        if step.set.len() + 1 != h.r() {
            return Err(Error::Structure(format!("peel step {i}: |S| != r - 1")));
        }
        let through: Vec<Vec<Vertex>> = current.iter().filter(|e| is_subset(&step.set, e)).cloned().collect();
        if through != step.removed {
            return Err(Error::Structure(format!(
                "peel step {i}: removed edges differ from the edges through S = {:?}",
                step.set
            )));
        }
        if !step.removed.contains(&step.kept) {
            return Err(Error::Structure(format!("peel step {i}: kept edge is not among the removed")));
        }
        for e in &step.removed {
            current.remove(e);
        }
    }
    Ok(Hypergraph::from_set(h.r(), h.n(), current))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreCheck {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReport {
    pub checks: Vec<CoreCheck>,
}

impl CoreReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.verdict)
    }
}

/// Every `(r-1)`-set in an edge of `a` with codegree below `alpha`, with its codegree.
pub fn core_violations(a: &Hypergraph, alpha: usize) -> Vec<(Vec<Vertex>, usize)> {
    let mut deg: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
    for e in a.edges() {
        for_each_subset(e, a.r() - 1, |s| *deg.entry(s.to_vec()).or_default() += 1);
    }
    deg.into_iter().filter(|&(_, d)| d < alpha).collect()
}

/// Checks the decomposition against `h`: core property of `A`, the witness
/// ratio, and (given an r-partite partition) the trace-sum inequality.
pub fn verify_core(h: &Hypergraph, parts: Option<&Partition>, d: &CoreDecomposition) -> Result<CoreReport> {
    if d.core.r() != h.r() || d.core.n() != h.n() || d.kept.r() != h.r() {
        return Err(Error::Structure("decomposition has a different shape than the host".into()));
    }
    let survivors = replay_peel_log(h, &d.peel_log)?;
    if survivors != d.core {
        return Err(Error::Structure("peel log does not replay to the stated core".into()));
    }
    let kept: BTreeSet<&Vec<Vertex>> = d.peel_log.iter().map(|s| &s.kept).collect();
    if kept.len() != d.kept.len() || d.kept.edges().iter().any(|e| !kept.contains(e)) {
        return Err(Error::Structure("kept family differs from the peel log".into()));
    }
    if let Some(step) = d.peel_log.iter().find(|s| s.removed.is_empty() || s.removed.len() >= d.alpha) {
        return Err(Error::Structure(format!(
            "peel step at S = {:?} removed {} edges, outside 1..alpha-1",
            step.set,
            step.removed.len()
        )));
    }

    let mut checks = Vec::new();
    let violations = core_violations(&d.core, d.alpha);
    checks.push(CoreCheck {
        name: "core-property".into(),
        verdict: if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
        detail: match violations.first() {
            None => format!("every (r-1)-set has codegree 0 or >= {}", d.alpha),
            Some((s, c)) => format!("{} violating sets, first {s:?} with codegree {c}", violations.len()),
        },
    });

    let deleted = h.len() - d.core.len();
    checks.push(if d.alpha >= 2 {
        let ok = d.kept.len() * (d.alpha - 1) >= deleted;
        CoreCheck {
            name: "witness-ratio".into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: format!("|B| = {} vs |H \\ A| / (alpha - 1) = {deleted}/{}", d.kept.len(), d.alpha - 1),
        }
    } else {
        CoreCheck {
            name: "witness-ratio".into(),
            verdict: Verdict::Skipped,
            detail: "alpha = 1: ratio undefined".into(),
        }
    });

    checks.push(match parts {
        Some(p) if h.is_r_partite(p) => {
            let sum: usize = (1..=h.r())
                .map(|s| d.kept.trace_minus_part(p, s).map(|t| t.len()))
                .sum::<Result<usize>>()?;
            CoreCheck {
                name: "trace-sum".into(),
                verdict: if d.kept.len() <= sum { Verdict::Pass } else { Verdict::Fail },
                detail: format!("|B| = {} vs sum of |B[s]| = {sum}", d.kept.len()),
            }
        }
        Some(_) => CoreCheck {
            name: "trace-sum".into(),
            verdict: Verdict::Skipped,
            detail: "host is not r-partite under the given partition".into(),
        },
        None => CoreCheck {
            name: "trace-sum".into(),
            verdict: Verdict::Skipped,
            detail: "no partition given".into(),
        },
    });
    Ok(CoreReport { checks })
}

/// Turns a copy of `f` in the 2-shadow of an alpha-core into an induced Berge
/// copy on the same base set. For each pattern edge `xy` the hyperedge
/// through `{x, y}` meeting the base set least is chosen (ties: smallest edge).
pub fn embed_from_shadow(
    a: &Hypergraph,
    f: &PatternGraph,
    copy: &[Vertex],
    alpha: usize,
) -> Result<BergeCertificate> {
    let t = f.order();
    if f.size() == 0 {
        return Err(Error::Pattern("pattern has no edges".into()));
    }
    if t > alpha + 1 {
        return Err(Error::Parameter(format!("|V(F)| - 1 = {} exceeds alpha = {alpha}", t - 1)));
    }
    if copy.len() != t {
        return Err(Error::Parameter(format!("copy maps {} vertices, pattern has {t}", copy.len())));
    }
    let mut base = copy.to_vec();
    base.sort_unstable();
    if base.iter().any(|&w| w == 0 || w > a.n()) || base.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::Parameter("copy is not an injection into the vertex set".into()));
    }
    let in_base = |v: &Vertex| base.binary_search(v).is_ok();

    let mut edge_map: Vec<Vec<Vertex>> = Vec::with_capacity(f.size());
    for (x, y) in f.edges() {
        let (wx, wy) = (copy[x - 1], copy[y - 1]);
        let best = a
            .edges()
            .iter()
            .filter(|e| e.contains(&wx) && e.contains(&wy))
            .min_by_key(|e| e.iter().filter(|v| in_base(v)).count())
            .ok_or_else(|| Error::Parameter(format!("pair {{{wx}, {wy}}} is not in the 2-shadow")))?;
        if let Some(&z) = best.iter().find(|&&v| in_base(&v) && v != wx && v != wy) {
            let set: Vec<Vertex> = best.iter().copied().filter(|&v| v != z).collect();
            let codegree = a.codegree(&set);
            return Err(Error::CoreProperty { set, codegree, alpha });
        }
        edge_map.push(best.clone());
    }
    let mut distinct = edge_map.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != edge_map.len() {
        return Err(Error::Structure("selected hyperedges are not distinct".into()));
    }
    Ok(BergeCertificate {
        mode: Mode::Induced,
        base_map: copy.to_vec(),
        edge_map,
    })
}

/// Adds an apex over pattern edge `xy` and re-embeds: the hyperedge serving
/// `xy` has a vertex `z'` outside the base set, which becomes the new base
/// vertex.
pub fn extend_plus(
    a: &Hypergraph,
    f: &PatternGraph,
    cert: &BergeCertificate,
    xy: (Vertex, Vertex),
    alpha: usize,
) -> Result<(PatternGraph, BergeCertificate)> {
    if a.r() < 3 {
        return Err(Error::Uniformity(format!("extension needs r >= 3, got r = {}", a.r())));
    }
    if cert.mode != Mode::Induced || !verify_certificate(a, f, cert) {
        return Err(Error::Parameter("certificate is not a valid induced copy of the pattern".into()));
    }
    if f.order() > alpha {
        return Err(Error::Parameter(format!("|V(F)| = {} exceeds alpha = {alpha}", f.order())));
    }
    let (x, y) = (xy.0.min(xy.1), xy.0.max(xy.1));
    let j = f
        .edge_index(x, y)
        .ok_or_else(|| Error::Parameter(format!("{{{x}, {y}}} is not a pattern edge")))?;
    let base = cert.base_set();
    let apex = cert.edge_map[j]
        .iter()
        .copied()
        .find(|v| base.binary_search(v).is_err())
        .expect("r >= 3 and the trace is a pair");
    let plus = f_plus(f, (x, y))?;
    let mut copy = cert.base_map.clone();
    copy.push(apex);
    let extended = embed_from_shadow(a, &plus, &copy, alpha)?;
    Ok((plus, extended))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(r: usize, n: usize, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::new(r, n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn transversal_triples() -> (Hypergraph, Partition) {
        let mut edges = Vec::new();
        for a in [1, 2] {
            for b in [3, 4] {
                for c in [5, 6] {
                    edges.push(vec![a, b, c]);
                }
            }
        }
        let p = Partition::from_parts(6, &[vec![1, 2], vec![3, 4], vec![5, 6]]).unwrap();
        (Hypergraph::new(3, 6, edges).unwrap(), p)
    }

    #[test]
    fn alpha_one_keeps_everything() {
        let (h, _) = transversal_triples();
        let d = alpha_core(&h, 1).unwrap();
        assert_eq!(d.core, h);
        assert!(d.kept.is_empty() && d.peel_log.is_empty());
    }

    #[test]
    fn single_edge_peels() {
        let h = hg(3, 3, &[&[1, 2, 3]]);
        let d = alpha_core(&h, 2).unwrap();
        assert!(d.core.is_empty());
        assert_eq!(d.kept.edges(), &[vec![1, 2, 3]]);
        assert_eq!(d.peel_log.len(), 1);
        assert_eq!(d.peel_log[0].set, vec![1, 2]);
        let report = verify_core(&h, None, &d).unwrap();
        assert_eq!(report.verdict("witness-ratio"), Some(Verdict::Pass));
        assert_eq!(report.verdict("trace-sum"), Some(Verdict::Skipped));
    }

    #[test]
    fn complete_tripartite_is_a_two_core() {
        let (h, p) = transversal_triples();
        let d = alpha_core(&h, 2).unwrap();
        assert_eq!(d.core, h);
        assert!(d.kept.is_empty());
        let report = verify_core(&h, Some(&p), &d).unwrap();
        assert!(report.passed());
        // codegree 2 < 3: everything peels
        let d3 = alpha_core(&h, 3).unwrap();
        assert!(d3.core.is_empty());
        assert!(verify_core(&h, Some(&p), &d3).unwrap().passed());
    }

    #[test]
    fn alpha_one_skips_ratio() {
        let (h, _) = transversal_triples();
        let d = alpha_core(&h, 1).unwrap();
        assert_eq!(verify_core(&h, None, &d).unwrap().verdict("witness-ratio"), Some(Verdict::Skipped));
    }

    #[test]
    fn bad_parameters() {
        let h = hg(3, 3, &[&[1, 2, 3]]);
        assert!(matches!(alpha_core(&h, 0), Err(Error::Parameter(_))));
        let g = hg(1, 3, &[&[1]]);
        assert!(matches!(alpha_core(&g, 2), Err(Error::Uniformity(_))));
    }

    #[test]
    fn tampered_decomposition_is_rejected() {
        let h = hg(3, 4, &[&[1, 2, 3], &[1, 2, 4]]);
        let mut d = alpha_core(&h, 3).unwrap();
        assert!(verify_core(&h, None, &d).is_ok());
        d.peel_log[0].removed.pop();
        assert!(matches!(verify_core(&h, None, &d), Err(Error::Structure(_))));
        let mut d = alpha_core(&h, 3).unwrap();
        d.core = h.clone();
        assert!(matches!(verify_core(&h, None, &d), Err(Error::Structure(_))));
    }

    #[test]
    fn embed_path_in_tripartite() {
        let (a, _) = transversal_triples();
        let p3 = PatternGraph::path(3);
        let c = embed_from_shadow(&a, &p3, &[1, 3, 5], 2).unwrap();
        assert_eq!(c.edge_map, vec![vec![1, 3, 6], vec![2, 3, 5]]);
        assert!(verify_certificate(&a, &p3, &c));
    }

    #[test]
    fn embed_single_edge() {
        let a = hg(3, 5, &[&[1, 2, 3], &[1, 2, 4]]);
        let k2 = PatternGraph::complete(2);
        let c = embed_from_shadow(&a, &k2, &[2, 1], 1).unwrap();
        assert_eq!(c.edge_map, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn embed_detects_non_core() {
        let a = hg(3, 5, &[&[1, 2, 3], &[1, 3, 4], &[2, 3, 5]]);
        let err = embed_from_shadow(&a, &PatternGraph::cycle(3), &[1, 2, 3], 2).unwrap_err();
        assert_eq!(err, Error::CoreProperty { set: vec![1, 2], codegree: 1, alpha: 2 });
    }

    #[test]
    fn embed_rejects_bad_copies() {
        let (a, _) = transversal_triples();
        let p3 = PatternGraph::path(3);
        assert!(matches!(embed_from_shadow(&a, &p3, &[1, 3], 2), Err(Error::Parameter(_))));
        assert!(matches!(embed_from_shadow(&a, &p3, &[1, 1, 5], 2), Err(Error::Parameter(_))));
        // {1,2} lies in no edge
        assert!(matches!(embed_from_shadow(&a, &p3, &[1, 2, 5], 2), Err(Error::Parameter(_))));
        assert!(matches!(embed_from_shadow(&a, &PatternGraph::cycle(4), &[1, 3, 2, 4], 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn extend_single_edge_to_triangle() {
        let (a, _) = transversal_triples();
        let k2 = PatternGraph::complete(2);
        let cert = BergeCertificate { mode: Mode::Induced, base_map: vec![1, 3], edge_map: vec![vec![1, 3, 5]] };
        let (plus, c) = extend_plus(&a, &k2, &cert, (1, 2), 3).unwrap();
        assert_eq!(plus, PatternGraph::cycle(3));
        assert_eq!(c.base_map[..2], [1, 3]);
        assert!([5, 6].contains(&c.base_map[2]));
        assert!(verify_certificate(&a, &plus, &c));
    }

    #[test]
    fn extend_rejects_graphs_and_bad_input() {
        let g = PatternGraph::cycle(4);
        let k2 = PatternGraph::complete(2);
        let cert = BergeCertificate { mode: Mode::Induced, base_map: vec![1, 2], edge_map: vec![vec![1, 2]] };
        assert!(matches!(extend_plus(g.as_hypergraph(), &k2, &cert, (1, 2), 3), Err(Error::Uniformity(_))));
        let (a, _) = transversal_triples();
        let wrong = BergeCertificate { mode: Mode::Induced, base_map: vec![1, 2], edge_map: vec![vec![1, 3, 5]] };
        assert!(matches!(extend_plus(&a, &k2, &wrong, (1, 2), 3), Err(Error::Parameter(_))));
    }
}
