use std::fmt;

use thiserror::Error;

use crate::hypergraph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("pattern error: {0}")]
    Pattern(String),
    #[error("uniformity error: {0}")]
    Uniformity(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// A minimal hyperedge kept a third base vertex, so the (r-1)-set `set`
    /// violates the core property (its codegree is positive but below alpha).
    #[error("core-property error: (r-1)-set {set:?} has codegree {codegree} < alpha = {alpha}")]
    CoreProperty {
        set: Vec<Vertex>,
        codegree: usize,
        alpha: usize,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Diagnostic codes for malformed `.hg` input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseCode {
    MissingHeader,
    BadHeader,
    NotAnInteger,
    WrongArity,
    VertexOutOfRange,
    DuplicateVertex,
    DuplicateEdge,
    EdgeCountMismatch,
}

impl ParseCode {
    pub fn code(self) -> &'static str {
        match self {
            ParseCode::MissingHeader => "HG001",
            ParseCode::BadHeader => "HG002",
            ParseCode::NotAnInteger => "HG003",
            ParseCode::WrongArity => "HG004",
            ParseCode::VertexOutOfRange => "HG005",
            ParseCode::DuplicateVertex => "HG006",
            ParseCode::DuplicateEdge => "HG007",
            ParseCode::EdgeCountMismatch => "HG008",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub code: ParseCode,
    /// 1-based line number.
    pub line: usize,
    /// 1-based column of the offending token (1 when the whole line is at fault).
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: [{}] {}",
            self.line,
            self.column,
            self.code.code(),
            self.message
        )
    }
}
