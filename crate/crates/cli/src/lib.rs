//! Command-line front end: argument parsing, file I/O and exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use berge_core::bounds::verify_chain;
use berge_core::constructions::{
    balanced_parts, complete_multipartite_construction, extract_r_partite_with, lift_construction,
    matching_construction, star_clique_construction, sunflower_construction, ExtractConfig,
};
use berge_core::core_decomp::{alpha_core, verify_core};
use berge_core::detect::{find, normalize_pattern, verify_certificate};
use berge_core::format::{emit_hypergraph, parse_graph, parse_hypergraph};
use berge_core::gt::{generate_gt_capped, is_in_gt_capped};
use berge_core::report::{
    emit_report, Body, Construction, CoreRun, Detection, GtList, GtQuery, Report, RunConfig,
    DEFAULT_SEED,
};
use berge_core::search::{ex_berge, ex_clique, Tier};
use berge_core::{Hypergraph, Mode, Partition, PatternGraph, Vertex};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "berge", version, about = "Berge and induced Berge extremal problems on small hypergraphs")]
struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Record wall-clock time in search stats
    #[arg(long, global = true)]
    timing: bool,

    /// Largest level of the 2-tree class that may be generated
    #[arg(long, global = true)]
    gt_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Berge,
    Induced,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Berge => Mode::Berge,
            ModeArg::Induced => Mode::Induced,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProblemArg {
    Clique,
    Berge,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TierArg {
    Exhaustive,
    Bnb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionArg {
    Matching,
    Sunflower,
    StarClique,
    Multipartite,
    Lift,
    Rpartite,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Look for an (induced) Berge copy of a graph in a hypergraph
    Detect {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Also write the certificate as JSON
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Exit 1 when the pattern is present instead of absent
        #[arg(long)]
        expect_absent: bool,
    },
    /// Peel to the alpha-core and check its properties
    Core {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        alpha: usize,
        /// Parts file: one line of vertices per part
        #[arg(long)]
        parts: Option<PathBuf>,
        /// Also write the peel log as JSON
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// List a level of the 2-tree class or test membership
    Gtclass {
        #[arg(long, conflicts_with = "member", requires = "list")]
        t: Option<usize>,
        #[arg(long, requires = "t")]
        list: bool,
        #[arg(long, required_unless_present = "t")]
        member: Option<PathBuf>,
        /// Directory receiving one .hg file per listed member
        #[arg(long, requires = "list")]
        dir: Option<PathBuf>,
    },
    /// Build a lower-bound construction
    Construct {
        #[arg(value_enum)]
        kind: ConstructionArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Input hypergraph for lift and rpartite
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Write the hypergraph in .hg format
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compute an exact extremal number
    Search {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "berge")]
        mode: ModeArg,
        #[arg(long)]
        all_witnesses: bool,
        #[arg(long, value_enum)]
        tier: Option<TierArg>,
        #[arg(long)]
        exhaustive_cap: Option<usize>,
        #[arg(long)]
        bnb_cap: Option<usize>,
    },
    /// Check a bound chain on exact values
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        pattern: PathBuf,
    },
}

struct Outcome {
    report: Report,
    status: i32,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    parse_hypergraph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Parses a pattern and strips isolated vertices, returning any notice.
fn load_pattern(path: &Path) -> anyhow::Result<(PatternGraph, Vec<String>)> {
    let f = parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let (f, notice) = normalize_pattern(&f)?;
    Ok((f, notice.into_iter().collect()))
}

/// One part per non-empty line; `#` starts a comment.
fn parse_parts(text: &str, n: usize) -> anyhow::Result<Partition> {
    let mut parts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let part = line
            .split_whitespace()
            .map(|tok| tok.parse::<Vertex>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("parts line {}: expected vertex ids", i + 1))?;
        parts.push(part);
    }
    Ok(Partition::from_parts(n, &parts)?)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn json(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn need(v: Option<usize>, flag: &str, kind: &str) -> anyhow::Result<usize> {
    match v {
        Some(v) => Ok(v),
        None => bail!("{kind} needs --{flag}"),
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let mut config = RunConfig { seed: cli.seed, ..RunConfig::default() };
    config.search.timing = cli.timing;
    if let Some(cap) = cli.gt_cap {
        config.gt_cap = cap;
    }

    let outcome = match cli.command {
        Command::Detect { host, pattern, mode, certificate, expect_absent } => {
            let h = load_hypergraph(&host)?;
            let (f, notices) = load_pattern(&pattern)?;
            let mode = Mode::from(mode);
            let cert = find(&h, &f, mode)?;
            let verified = cert.as_ref().map_or(true, |c| verify_certificate(&h, &f, c));
            if let (Some(path), Some(c)) = (&certificate, &cert) {
                write_file(path, &json(c))?;
            }
            let found = cert.is_some();
            let det = Detection {
                mode,
                verdict: if found { "present" } else { "absent" }.into(),
                found,
                certificate: cert,
                verified,
            };
            let status = if found != expect_absent && verified { EXIT_OK } else { EXIT_FAIL };
            Outcome {
                report: Report::new("detect", &config, Body::Detection(det)).with_notices(notices),
                status,
            }
        }
        Command::Core { host, alpha, parts, log } => {
            let h = load_hypergraph(&host)?;
            let parts = match parts {
                Some(p) => Some(parse_parts(&read(&p)?, h.n()).with_context(|| format!("in {}", p.display()))?),
                None => None,
            };
            let d = alpha_core(&h, alpha)?;
            let checks = verify_core(&h, parts.as_ref(), &d)?;
            if let Some(path) = log {
                write_file(&path, &json(&d.peel_log))?;
            }
            let status = if checks.passed() { EXIT_OK } else { EXIT_FAIL };
            Outcome {
                report: Report::new("core", &config, Body::Core(CoreRun { decomposition: d, checks })),
                status,
            }
        }
        Command::Gtclass { t, list: _, member, dir } => {
            if let Some(path) = member {
                let g = parse_graph(&read(&path)?).with_context(|| format!("in {}", path.display()))?;
                let mut notices = Vec::new();
                if g.has_isolated_vertices() {
                    notices.push(format!(
                        "graph had {} isolated vertices; membership uses the stripped graph",
                        g.order() - g.strip_isolated().order()
                    ));
                }
                let m = is_in_gt_capped(&g, config.gt_cap)?;
                let status = if m.is_some() { EXIT_OK } else { EXIT_FAIL };
                Outcome {
                    report: Report::new("gtclass", &config, Body::GtMembership(GtQuery { member: m }))
                        .with_notices(notices),
                    status,
                }
            } else {
                let t = t.expect("clap requires --t or --member");
                let members = generate_gt_capped(t, config.gt_cap)?;
                if let Some(dir) = dir {
                    fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
                    for (i, m) in members.iter().enumerate() {
                        let path = dir.join(format!("gt{t}_{}.hg", i + 1));
                        write_file(&path, &emit_hypergraph(m.graph.as_hypergraph()))?;
                    }
                }
                Outcome {
                    report: Report::new("gtclass", &config, Body::GtList(GtList { t, members })),
                    status: EXIT_OK,
                }
            }
        }
        Command::Construct { kind, n, r, t, k, input, output } => {
            let (name, hypergraph, parts) = match kind {
                ConstructionArg::Matching => {
                    ("matching", matching_construction(need(n, "n", "matching")?, need(r, "r", "matching")?)?, None)
                }
                ConstructionArg::Sunflower => {
                    ("sunflower", sunflower_construction(need(n, "n", "sunflower")?, need(r, "r", "sunflower")?)?, None)
                }
                ConstructionArg::StarClique => (
                    "star-clique",
                    star_clique_construction(
                        need(n, "n", "star-clique")?,
                        need(r, "r", "star-clique")?,
                        need(t, "t", "star-clique")?,
                    )?,
                    None,
                ),
                ConstructionArg::Multipartite => {
                    let (n, k) = (need(n, "n", "multipartite")?, need(k, "k", "multipartite")?);
                    let h = complete_multipartite_construction(n, need(r, "r", "multipartite")?, k)?;
                    ("multipartite", h, Some(balanced_parts(n, k)))
                }
                ConstructionArg::Lift => {
                    let Some(path) = input else { bail!("lift needs --in") };
                    ("lift", lift_construction(&load_hypergraph(&path)?), None)
                }
                ConstructionArg::Rpartite => {
                    let Some(path) = input else { bail!("rpartite needs --in") };
                    let h = load_hypergraph(&path)?;
                    let cfg = ExtractConfig { seed: config.seed, ..ExtractConfig::default() };
                    let (p, sub) = extract_r_partite_with(&h, &cfg)?;
                    ("rpartite", sub, Some(p.parts()))
                }
            };
            if let Some(path) = output {
                write_file(&path, &emit_hypergraph(&hypergraph))?;
            }
            let body = Body::Construction(Construction { name: name.into(), hypergraph, parts });
            Outcome { report: Report::new("construct", &config, body), status: EXIT_OK }
        }
        Command::Search { problem, n, r, s, pattern, mode, all_witnesses, tier, exhaustive_cap, bnb_cap } => {
            let (f, notices) = load_pattern(&pattern)?;
            let search = &mut config.search;
            search.all_witnesses = all_witnesses;
            search.tier = tier.map(|t| match t {
                TierArg::Exhaustive => Tier::Exhaustive,
                TierArg::Bnb => Tier::BranchAndBound,
            });
            if let Some(c) = exhaustive_cap {
                search.exhaustive_cap = c;
            }
            if let Some(c) = bnb_cap {
                search.bnb_cap = c;
            }
            let result = match problem {
                ProblemArg::Clique => ex_clique(n, s.unwrap_or(2), &f, &config.search)?,
                ProblemArg::Berge => ex_berge(n, need(r, "r", "berge search")?, &f, mode.into(), &config.search)?,
            };
            Outcome {
                report: Report::new("search", &config, Body::Search(result)).with_notices(notices),
                status: EXIT_OK,
            }
        }
        Command::Verify { what: VerifyCommand::Chain { n, r, pattern } } => {
            let (f, notices) = load_pattern(&pattern)?;
            let report = verify_chain(n, r, &f, &config.search)?;
            let status = if report.passed() { EXIT_OK } else { EXIT_FAIL };
            Outcome {
                report: Report::new("verify-chain", &config, Body::Bounds(report)).with_notices(notices),
                status,
            }
        }
    };
    Ok(outcome)
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(Outcome { report, status }) => {
            let text = emit_report(&report);
            let written = match &out {
                Some(path) => write_file(path, &text),
                None => stdout.write_all(text.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e:#}");
                return EXIT_USAGE;
            }
            status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
