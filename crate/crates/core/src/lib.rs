//! Exact combinatorial search for Berge and induced Berge (trace) problems
//! on small uniform hypergraphs.

pub mod bounds;
pub mod constructions;
pub mod core_decomp;
pub mod detect;
pub mod error;
pub mod format;
pub mod graph;
pub mod gt;
pub mod hypergraph;
pub mod matching;
pub mod report;
pub mod search;

pub use detect::{BergeCertificate, Mode};
pub use error::{Error, ParseCode, ParseError, Result};
pub use graph::PatternGraph;
pub use hypergraph::{Hypergraph, Partition, Vertex};
pub use core_decomp::Verdict;
