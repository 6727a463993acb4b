//! The `.hg` text format.
//!
//! ```text
//! # comment lines start with '#'
//! r n m
//! v1 v2 ... vr      (m edge lines, 1-based vertex ids, any order)
//! ```
//!
//! Blank lines are ignored. Graphs use the same format with `r = 2`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{ParseCode, ParseError};
use crate::graph::PatternGraph;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::Error;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err(code: ParseCode, line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        code,
        line,
        column,
        message: message.into(),
    }
}

fn integer(tok: &Token<'_>, line: usize) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| {
        err(
            ParseCode::NotAnInteger,
            line,
            tok.column,
            format!("expected a non-negative integer, found {:?}", tok.text),
        )
    })
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(ParseCode::MissingHeader, 1, 1, "missing header line `r n m`"))?;
    let htoks = tokens(header);
    if htoks.len() != 3 {
        return Err(err(
            ParseCode::BadHeader,
            hline,
            1,
            format!("header must have 3 fields `r n m`, found {}", htoks.len()),
        ));
    }
    let r = integer(&htoks[0], hline)?;
    let n = integer(&htoks[1], hline)?;
    let m = integer(&htoks[2], hline)?;
    if r == 0 {
        return Err(err(ParseCode::BadHeader, hline, htoks[0].column, "uniformity r must be at least 1"));
    }

    // canonical edge -> line of first occurrence
    let mut seen: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
    let mut count = 0;
    for (lineno, line) in lines {
        count += 1;
        let toks = tokens(line);
        if count > m {
            return Err(err(
                ParseCode::EdgeCountMismatch,
                lineno,
                1,
                format!("header declares {m} edges but more edge lines follow"),
            ));
        }
        if toks.len() != r {
            return Err(err(
                ParseCode::WrongArity,
                lineno,
                1,
                format!("edge has {} vertices, expected {r}", toks.len()),
            ));
        }
        let mut edge = Vec::with_capacity(r);
        for tok in &toks {
            let v = integer(tok, lineno)?;
            if v == 0 || v > n {
                return Err(err(
                    ParseCode::VertexOutOfRange,
                    lineno,
                    tok.column,
                    format!("vertex {v} outside 1..={n}"),
                ));
            }
            if edge.contains(&v) {
                return Err(err(
                    ParseCode::DuplicateVertex,
                    lineno,
                    tok.column,
                    format!("vertex {v} repeated within the edge"),
                ));
            }
            edge.push(v);
        }
        edge.sort_unstable();
        if let Some(first) = seen.insert(edge.clone(), lineno) {
            return Err(err(
                ParseCode::DuplicateEdge,
                lineno,
                1,
                format!("edge {edge:?} already given on line {first}"),
            ));
        }
    }
    if count != m {
        return Err(err(
            ParseCode::EdgeCountMismatch,
            hline,
            htoks[2].column,
            format!("header declares {m} edges, found {count}"),
        ));
    }
    Ok(Hypergraph::from_canonical(r, n, seen.into_keys().collect()))
}

pub fn parse_graph(text: &str) -> Result<PatternGraph, Error> {
    PatternGraph::from_hypergraph(parse_hypergraph(text)?)
}

pub fn emit_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.r(), h.n(), h.len());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
