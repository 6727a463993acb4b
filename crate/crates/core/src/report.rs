//! Schema-versioned JSON run reports and the matching reader.
//!
//! Output is deterministic: struct fields serialize in declaration order,
//! maps are sorted, and wall-clock time only appears when requested.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::core_decomp::{CoreDecomposition, CoreReport};
use crate::detect::{BergeCertificate, Mode};
use crate::error::{Error, Result};
use crate::gt::{GtMember, GtMembership};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::search::{SearchConfig, SearchResult};

pub const SCHEMA: &str = "berge-report/1";
pub const TOOL: &str = "berge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = crate::constructions::DEFAULT_SEED;

/// Every knob that can influence a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub search: SearchConfig,
    pub gt_cap: usize,
    pub chromatic_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            search: SearchConfig::default(),
            gt_cap: crate::gt::DEFAULT_GT_CAP,
            chromatic_cap: crate::graph::DEFAULT_CHROMATIC_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub mode: Mode,
    /// `"present"` or `"absent"`.
    pub verdict: String,
    pub found: bool,
    pub certificate: Option<BergeCertificate>,
    /// Whether the certificate passed the independent checker.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreRun {
    pub decomposition: CoreDecomposition,
    pub checks: CoreReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtList {
    pub t: usize,
    pub members: Vec<GtMember>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtQuery {
    pub member: Option<GtMembership>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub name: String,
    pub hypergraph: Hypergraph,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parts: Option<Vec<Vec<Vertex>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Body {
    Detection(Detection),
    Core(CoreRun),
    GtList(GtList),
    GtMembership(GtQuery),
    Construction(Construction),
    Search(SearchResult),
    Bounds(BoundReport),
    Acceptance(Vec<CriterionOutcome>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    #[serde(default)]
    pub notices: Vec<String>,
    pub body: Body,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &RunConfig, body: Body) -> Self {
        Report {
            schema: SCHEMA.into(),
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            config: config.clone(),
            notices: Vec::new(),
            body,
        }
    }

    pub fn with_notices(mut self, notices: impl IntoIterator<Item = String>) -> Self {
        self.notices.extend(notices);
        self
    }
}

pub fn emit_report(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}

pub fn read_report(text: &str) -> Result<Report> {
    let report: Report =
        serde_json::from_str(text).map_err(|e| Error::Structure(format!("unreadable report: {e}")))?;
    if report.schema != SCHEMA {
        return Err(Error::Structure(format!(
            "unsupported report schema {:?}, expected {SCHEMA:?}",
            report.schema
        )));
    }
    Ok(report)
}
