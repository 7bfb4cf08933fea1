//! Line-oriented text format for abstract isogeny graphs.
//!
//! ```text
//! AIG v1
//! vertices N
//! edges M
//! y s t Jy        (M lines, y = 0..M-1 in order)
//! L x0 x1 ... x_{N-1}
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{AbstractIsogenyGraph, Axiom, Edge, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: edge {edge} violates {axiom}")]
    Axiom {
        line: usize,
        edge: usize,
        axiom: &'static str,
    },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
}

pub fn write_aig(g: &AbstractIsogenyGraph) -> String {
    let mut s = String::new();
    writeln!(s, "AIG v1").unwrap();
    writeln!(s, "vertices {}", g.num_vertices()).unwrap();
    writeln!(s, "edges {}", g.num_edges()).unwrap();
    for (y, e) in g.edges().iter().enumerate() {
        writeln!(s, "{y} {} {} {}", e.source, e.target, g.dual(y)).unwrap();
    }
    s.push('L');
    for x in g.level_map() {
        write!(s, " {x}").unwrap();
    }
    s.push('\n');
    s
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| FormatError::Syntax {
        line,
        msg: format!("expected a natural number for {what}, found `{tok}`"),
    })
}

pub fn parse_aig(text: &str) -> Result<AbstractIsogenyGraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let syntax = |line: usize, msg: String| FormatError::Syntax { line, msg };

    let (ln, header) = lines
        .next()
        .ok_or(FormatError::Truncated("missing header"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["AIG", "v1"] {
        return Err(syntax(ln, format!("expected `AIG v1`, found `{header}`")));
    }

    let mut keyed = |key: &'static str| -> Result<usize, FormatError> {
        let (ln, l) = lines.next().ok_or(FormatError::Truncated(key))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 || toks[0] != key {
            return Err(syntax(ln, format!("expected `{key} <count>`")));
        }
        parse_usize(toks[1], ln, key)
    };
    let n = keyed("vertices")?;
    let m = keyed("edges")?;

    let mut edges = Vec::with_capacity(m);
    let mut dual = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for y in 0..m {
        let (ln, l) = lines.next().ok_or(FormatError::Truncated("edge lines"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(syntax(ln, "expected `y s t Jy`".into()));
        }
        let idx = parse_usize(toks[0], ln, "edge index")?;
        if idx != y {
            return Err(syntax(
                ln,
                format!("edge index {idx} out of order, expected {y}"),
            ));
        }
        let s = parse_usize(toks[1], ln, "source")?;
        let t = parse_usize(toks[2], ln, "target")?;
        let j = parse_usize(toks[3], ln, "dual")?;
        if s >= n || t >= n {
            return Err(syntax(ln, format!("vertex index out of range (N = {n})")));
        }
        if j >= m {
            return Err(syntax(ln, format!("dual index {j} out of range (M = {m})")));
        }
        edges.push(Edge::new(s, t));
        dual.push(j);
        edge_lines.push(ln);
    }

    let (ln, l) = lines.next().ok_or(FormatError::Truncated("L line"))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.first() != Some(&"L") || toks.len() != n + 1 {
        return Err(syntax(ln, format!("expected `L` followed by {n} indices")));
    }
    let level = toks[1..]
        .iter()
        .map(|t| parse_usize(t, ln, "L value"))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = level.iter().find(|&&x| x >= n) {
        return Err(syntax(ln, format!("L value {bad} out of range")));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after L line".into()));
    }

    match AbstractIsogenyGraph::new(n, edges, dual, level) {
        Ok(g) => Ok(g),
        Err(GraphError::Axiom(v)) => Err(FormatError::Axiom {
            line: edge_lines[v.edge],
            edge: v.edge,
            axiom: match v.axiom {
                Axiom::SourceOfDual => "s(J y) = t(y)",
                Axiom::TargetOfDual => "t(J y) = L s(y)",
            },
        }),
        Err(e) => Err(syntax(ln, e.to_string())),
    }
}
