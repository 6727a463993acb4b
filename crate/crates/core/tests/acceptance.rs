//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. `--seed N` (or `BERGE_SEED`) fixes the randomness.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use berge_core::bounds::{star_bounds, verify_chain};
use berge_core::constructions::{extract_r_partite_with, star_clique_construction, star_clique_size, ExtractConfig};
use berge_core::core_decomp::{alpha_core, embed_from_shadow, verify_core};
use berge_core::detect::{find_berge, find_induced_berge, verify_certificate};
use berge_core::gt::{f_plus, generate_gt, is_in_gt, subgraph_embed};
use berge_core::hypergraph::{colex_subsets, for_each_subset};
use berge_core::report::{emit_report, Body, CriterionOutcome, Report, RunConfig, DEFAULT_SEED};
use berge_core::search::{ex_berge, ex_clique, SearchConfig};
use berge_core::{Hypergraph, Mode, Partition, PatternGraph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_trees, brute_triangle_free_max, isomorphic, naive_contains, random_hypergraph, random_partite};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn triples(edges: &[[Vertex; 3]]) -> Hypergraph {
    Hypergraph::new(3, 6, edges.iter().map(|e| e.to_vec())).unwrap()
}

fn triangle_systems(_seed: u64) -> Outcome {
    let c3 = PatternGraph::cycle(3);
    let systems = [
        triples(&[[1, 2, 4], [1, 3, 4], [2, 3, 4]]),
        triples(&[[1, 2, 4], [1, 3, 4], [2, 3, 5]]),
        triples(&[[1, 2, 4], [1, 3, 5], [2, 3, 6]]),
        triples(&[[1, 2, 3], [1, 3, 4], [2, 3, 5]]),
    ];
    let expected_induced = [true, true, true, false];
    let mut ok = true;
    let mut got = Vec::new();
    for (h, &want) in systems.iter().zip(&expected_induced) {
        let berge = find_berge(h, &c3).unwrap();
        let induced = find_induced_berge(h, &c3).unwrap();
        ok &= berge.as_ref().is_some_and(|c| verify_certificate(h, &c3, c));
        ok &= induced.as_ref().map_or(true, |c| verify_certificate(h, &c3, c));
        ok &= induced.is_some() == want;
        got.push(format!("{}/{}", u8::from(berge.is_some()), u8::from(induced.is_some())));
    }
    outcome(ok, format!("berge/induced per system: {}", got.join(" ")))
}

fn tiny_turan(_seed: u64) -> Outcome {
    let c3 = PatternGraph::cycle(3);
    let cfg = SearchConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for (mode, induced) in [(Mode::Berge, false), (Mode::Induced, true)] {
        let cands = colex_subsets(4, 3);
        let mut sweep = 0;
        for bits in 0u64..16 {
            let fam: Vec<u64> = (0..4).filter(|i| bits >> i & 1 == 1).map(|i| cands[i]).collect();
            let h = Hypergraph::from_masks(3, 4, &fam).unwrap();
            if !naive_contains(&h, &c3, induced) {
                sweep = sweep.max(fam.len() as u64);
            }
        }
        let searched = ex_berge(4, 3, &c3, mode, &cfg).unwrap().value;
        ok &= sweep == 2 && searched == 2;
        parts.push(format!("ex_3(4,{}C3) search {searched} sweep {sweep}", mode.as_str()));
    }
    for n in 3..=7 {
        let brute = brute_triangle_free_max(n);
        let searched = ex_clique(n, 2, &c3, &cfg).unwrap().value;
        ok &= brute == searched && brute == (n * n / 4) as u64;
        parts.push(format!("ex({n},C3)={searched}"));
    }
    outcome(ok, parts.join(", "))
}

/// Codegree of every (r-1)-set inside some edge of `a` is at least `alpha`.
fn core_property_holds(a: &Hypergraph, alpha: usize) -> bool {
    let mut deg: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
    for e in a.edges() {
        for_each_subset(e, a.r() - 1, |s| *deg.entry(s.to_vec()).or_default() += 1);
    }
    deg.values().all(|&d| d >= alpha)
}

fn trace_sum(b: &Hypergraph, p: &Partition) -> usize {
    (1..=b.r())
        .map(|s| {
            b.edges()
                .iter()
                .map(|e| e.iter().copied().filter(|&v| p.part_of(v) != s).collect::<Vec<_>>())
                .collect::<BTreeSet<_>>()
                .len()
        })
        .sum()
}

fn core_properties(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
    let (mut checks, mut violations, mut partite_checks) = (0, 0, 0);
    for i in 0..1000 {
        let r = 3 + i % 2;
        let n = rng.gen_range(r + 1..=10);
        let p = rng.gen_range(0.15..0.85);
        let (h, parts) = if i % 4 < 2 {
            let (h, p) = random_partite(&mut rng, r, n, p);
            (h, Some(p))
        } else {
            (random_hypergraph(&mut rng, r, n, p), None)
        };
        for alpha in 2..=4 {
            let d = alpha_core(&h, alpha).unwrap();
            checks += 1;
            let mut ok = core_property_holds(&d.core, alpha);
            ok &= d.kept.len() * (alpha - 1) >= h.len() - d.core.len();
            if let Some(p) = &parts {
                partite_checks += 1;
                ok &= d.kept.len() <= trace_sum(&d.kept, p);
            }
            ok &= verify_core(&h, parts.as_ref(), &d).unwrap().passed();
            if !ok {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("{checks} decompositions ({partite_checks} r-partite), {violations} violations"),
    )
}

fn shadow_patterns() -> Vec<(&'static str, PatternGraph)> {
    vec![
        ("K2", PatternGraph::complete(2)),
        ("P3", PatternGraph::path(3)),
        ("C3", PatternGraph::cycle(3)),
        ("P4", PatternGraph::path(4)),
        ("K13", PatternGraph::star(3)),
        ("C4", PatternGraph::cycle(4)),
        ("2K2", PatternGraph::matching(2)),
        ("K4-e", f_plus(&PatternGraph::cycle(3), (1, 2)).unwrap()),
        ("K4", PatternGraph::complete(4)),
        ("C5", PatternGraph::cycle(5)),
        ("P5", PatternGraph::path(5)),
    ]
}

fn certificate_independently_valid(a: &Hypergraph, f: &PatternGraph, base: &[Vertex], edges: &[Vec<Vertex>]) -> bool {
    let distinct: BTreeSet<&Vec<Vertex>> = edges.iter().collect();
    distinct.len() == edges.len()
        && f.edges().zip(edges).all(|((x, y), e)| {
            let trace: Vec<Vertex> = e.iter().copied().filter(|v| base.contains(v)).collect();
            let mut pair = vec![base[x - 1], base[y - 1]];
            pair.sort_unstable();
            a.contains_edge(e) && trace == pair
        })
}

fn shadow_embedding(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
    let patterns = shadow_patterns();
    let (mut instances, mut violations, mut tries) = (0, 0, 0);
    let mut by_pattern: BTreeMap<&str, usize> = BTreeMap::new();
    while instances < 600 && tries < 50_000 {
        tries += 1;
        let r = rng.gen_range(3..=4);
        let n = rng.gen_range(r + 2..=9);
        let p = rng.gen_range(0.3..0.9);
        let h = random_hypergraph(&mut rng, r, n, p);
        let alpha = rng.gen_range(2..=4);
        let a = alpha_core(&h, alpha).unwrap().core;
        if a.is_empty() {
            continue;
        }
        let (name, f) = &patterns[rng.gen_range(0..patterns.len())];
        if f.order() - 1 > alpha {
            continue;
        }
        let shadow = PatternGraph::from_hypergraph(a.shadow(2).unwrap()).unwrap();
        let mut perm: Vec<Vertex> = (1..=n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let shuffled = PatternGraph::from_hypergraph(shadow.as_hypergraph().relabel(&perm)).unwrap();
        let Some(image) = subgraph_embed(f, &shuffled) else { continue };
        let copy: Vec<Vertex> = image.iter().map(|&w| perm.iter().position(|&p| p == w).unwrap() + 1).collect();
        instances += 1;
        *by_pattern.entry(name).or_default() += 1;
        let ok = match embed_from_shadow(&a, f, &copy, alpha) {
            Ok(c) => {
                c.mode == Mode::Induced
                    && c.base_map == copy
                    && verify_certificate(&a, f, &c)
                    && certificate_independently_valid(&a, f, &c.base_map, &c.edge_map)
            }
            Err(_) => false,
        };
        if !ok {
            violations += 1;
        }
    }
    let spread: Vec<String> = by_pattern.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    outcome(
        violations == 0 && instances >= 500,
        format!("{instances} instances [{}], {violations} violations", spread.join(" ")),
    )
}

fn core_emptiness(_seed: u64) -> Outcome {
    let c3 = PatternGraph::cycle(3);
    let mut transversal = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                transversal.push(vec![a, b, c]);
            }
        }
    }
    let (mut free, mut violations, mut disagreements) = (0, 0, 0);
    for bits in 0u32..1 << transversal.len() {
        let edges = (0..8).filter(|i| bits >> i & 1 == 1).map(|i| transversal[i].clone());
        let h = Hypergraph::new(3, 6, edges).unwrap();
        let detected = find_induced_berge(&h, &c3).unwrap().is_some();
        if detected != naive_contains(&h, &c3, true) {
            disagreements += 1;
        }
        if !detected {
            free += 1;
            if !alpha_core(&h, 2).unwrap().core.is_empty() {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0 && disagreements == 0,
        format!("256 families, {free} induced-C3-free, {violations} non-empty cores, {disagreements} oracle disagreements"),
    )
}

fn gt_class(_seed: u64) -> Outcome {
    let mut ok = true;
    let mut sizes = Vec::new();
    let mut levels = BTreeMap::new();
    for t in 2..=7 {
        let level = generate_gt(t).unwrap();
        for m in &level {
            ok &= m.graph.order() == t && m.graph.size() == 2 * t - 3;
            ok &= m.graph.chromatic_number().unwrap() <= 3;
            ok &= m.replay().unwrap() == m.graph;
        }
        for (i, a) in level.iter().enumerate() {
            ok &= level[i + 1..].iter().all(|b| !isomorphic(&a.graph, &b.graph));
        }
        sizes.push(level.len());
        levels.insert(t, level);
    }
    // every apex extension of level t is isomorphic to a member of level t + 1
    for t in 2..=6 {
        for m in &levels[&t] {
            for e in m.graph.edges() {
                let g = f_plus(&m.graph, e).unwrap();
                ok &= levels[&(t + 1)].iter().any(|n| isomorphic(&g, &n.graph));
            }
        }
    }
    ok &= sizes[1] == 1 && sizes[2] == 1;
    let mut accepted = 0;
    let mut graphs: Vec<PatternGraph> = (3..=7).map(PatternGraph::cycle).collect();
    graphs.extend((2..=7).map(PatternGraph::path));
    for n in 2..=6 {
        graphs.extend(all_trees(n));
    }
    for g in &graphs {
        match is_in_gt(g).unwrap() {
            Some(m) => {
                accepted += 1;
                let emb = &m.embedding;
                ok &= g.edges().all(|(x, y)| m.member.graph.adjacent(emb[x - 1], emb[y - 1]));
            }
            None => ok = false,
        }
    }
    let k4_rejected = is_in_gt(&PatternGraph::complete(4)).unwrap().is_none();
    ok &= k4_rejected;
    outcome(
        ok,
        format!(
            "level sizes t=2..7 {sizes:?}, accepted {accepted}/{} cycles, paths and trees, K4 rejected: {k4_rejected}",
            graphs.len()
        ),
    )
}

fn star_sandwich(_seed: u64) -> Outcome {
    let cfg = SearchConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, t) in [(3, 4), (3, 5), (4, 4)] {
        let star = PatternGraph::star(t - 1);
        for n in 1..=10 {
            let h = star_clique_construction(n, r, t).unwrap();
            let sb = star_bounds(n, r, t).unwrap();
            ok &= h.len() as u128 == sb.lower && sb.lower == star_clique_size(n, r, t);
            ok &= find_induced_berge(&h, &star).unwrap().is_none();
        }
        let mut exact = Vec::new();
        for n in r..=7 {
            let v = ex_berge(n, r, &star, Mode::Induced, &cfg).unwrap().value;
            let sb = star_bounds(n, r, t).unwrap();
            ok &= sb.lower <= v as u128 && berge_core::bounds::Exact::int(v as i128) <= sb.upper;
            exact.push(format!("n={n}:{}<={v}<={}", sb.lower, sb.upper));
        }
        parts.push(format!("(r={r},t={t}) {}", exact.join(" ")));
    }
    outcome(ok, parts.join("; "))
}

fn inequality_chain(_seed: u64) -> Outcome {
    let cfg = SearchConfig::default();
    let patterns = [
        ("C3", PatternGraph::cycle(3)),
        ("P3", PatternGraph::path(3)),
        ("P4", PatternGraph::path(4)),
        ("K13", PatternGraph::star(3)),
        ("2K2", PatternGraph::matching(2)),
    ];
    let (mut reports, mut failures) = (0, Vec::new());
    let mut tight = String::new();
    for (name, f) in &patterns {
        for r in 2..=3 {
            for n in 1..=5 {
                let rep = verify_chain(n, r, f, &cfg).unwrap();
                reports += 1;
                if !rep.passed() || !rep.complete() {
                    failures.push(format!("{name} n={n} r={r}"));
                }
                if *name == "C3" && n == 4 && r == 3 {
                    let e = rep.entries_for("ii").next().unwrap();
                    tight = format!("{} <= {}", e.left.unwrap(), e.right.unwrap());
                }
            }
        }
    }
    outcome(
        failures.is_empty() && tight == "2 <= 2",
        format!("{reports} chains, failures {failures:?}, n=4 r=3 C3 monotonicity {tight}"),
    )
}

fn partite_fraction(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
    let (mut violations, mut kept_total, mut edge_total) = (0, 0, 0);
    for i in 0..1000 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.05..0.9);
        let h = random_hypergraph(&mut rng, 3, n, p);
        let config = ExtractConfig { seed: seed.wrapping_add(i), ..ExtractConfig::default() };
        let ok = match extract_r_partite_with(&h, &config) {
            Ok((p, sub)) => {
                let transversal = h.filter_edges(|_, e| {
                    e.iter().map(|&v| p.part_of(v)).collect::<BTreeSet<_>>().len() == 3
                });
                kept_total += sub.len();
                edge_total += h.len();
                p.k() == 3 && sub.is_r_partite(&p) && sub == transversal && sub.len() * 27 >= 6 * h.len()
            }
            Err(_) => false,
        };
        if !ok {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("1000 hypergraphs, kept {kept_total}/{edge_total} edges, {violations} below 6/27"),
    )
}

type Criterion = (usize, &'static str, Duration, fn(u64) -> Outcome);

const CRITERIA: [Criterion; 9] = [
    (1, "triangle systems classify", Duration::from_secs(1), triangle_systems),
    (2, "tiny Turan values", Duration::from_secs(10), tiny_turan),
    (3, "core peeling properties", Duration::from_secs(60), core_properties),
    (4, "shadow embedding soundness", Duration::from_secs(60), shadow_embedding),
    (5, "core emptiness for induced-C3-free tripartite", Duration::from_secs(120), core_emptiness),
    (6, "two-tree class", Duration::from_secs(60), gt_class),
    (7, "star sandwich", Duration::from_secs(300), star_sandwich),
    (8, "inequality chain", Duration::from_secs(600), inequality_chain),
    (9, "r-partite extraction fraction", Duration::from_secs(60), partite_fraction),
];

fn run_suite(seed: u64, print: bool) -> (Report, bool) {
    let mut outcomes = Vec::new();
    let mut all_ok = true;
    for (id, name, limit, f) in CRITERIA {
        let start = Instant::now();
        let o = f(seed);
        let elapsed = start.elapsed();
        let in_time = elapsed < limit;
        let pass = o.passed && in_time;
        all_ok &= pass;
        if print {
            let timing = if in_time { String::new() } else { format!(" [over the {}s limit]", limit.as_secs()) };
            println!(
                "criterion {id:>2} {}: {name}: {}{timing} ({:.2}s)",
                if pass { "PASS" } else { "FAIL" },
                o.detail,
                elapsed.as_secs_f64()
            );
        }
        outcomes.push(CriterionOutcome { id, name: name.into(), passed: o.passed, detail: o.detail });
    }
    let config = RunConfig { seed, ..RunConfig::default() };
    (Report::new("acceptance", &config, Body::Acceptance(outcomes)), all_ok)
}

fn seed_from_args() -> u64 {
    let args: Vec<String> = std::env::args().collect();
    args.iter()
        .position(|a| a == "--seed")
        .and_then(|i| args.get(i + 1))
        .cloned()
        .or_else(|| std::env::var("BERGE_SEED").ok())
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(DEFAULT_SEED)
}

fn main() -> ExitCode {
    let seed = seed_from_args();
    println!("acceptance suite, seed {seed}");
    let (first, mut ok) = run_suite(seed, true);
    let (second, _) = run_suite(seed, false);
    let (a, b) = (emit_report(&first), emit_report(&second));
    let identical = a == b;
    ok &= identical;
    println!(
        "criterion 10 {}: deterministic reports: {} bytes, identical across two runs: {identical}",
        if identical { "PASS" } else { "FAIL" },
        a.len()
    );
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-report.json");
    if std::fs::write(&path, &a).is_ok() {
        println!("report written to {}", path.display());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
