//! The edge-list graph format and the `--shore` / `--matching` arguments.
//!
//! ```text
//! # paw
//! 4 4
//! 1 2
//! 1 3
//! 1 4
//! 3 4
//! ```
//!
//! Vertices are `1..=n`. Repeated lines give parallel edges.

use std::path::Path;

use tightcut_core::{Graph, Matching, VertexId, VertexSet};

use crate::error::{CliError, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|tok| tok.parse::<u32>().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing \"n m\" header"))?;
    let (n, m) = match numbers(hline, header)?[..] {
        [n, m] => (n, m as usize),
        _ => return Err(parse_err(hline, "header must be \"n m\"")),
    };
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (no, text) in lines {
        last = no;
        let (u, v) = match numbers(no, text)?[..] {
            [u, v] => (u, v),
            _ => return Err(parse_err(no, "edge line must be \"u v\"")),
        };
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(parse_err(no, format!("vertex {x} out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(parse_err(no, format!("self-loop at {u}")));
        }
        if edges.len() == m {
            return Err(parse_err(no, format!("more than the {m} declared edges")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(last, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Graph::from_edges(1..=n, &edges)?)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse_graph(&text)
}

/// `"1,2,3"`.
pub fn parse_shore(g: &Graph, arg: &str) -> Result<VertexSet> {
    let bad = |msg: String| CliError::Argument { what: "shore", msg };
    let mut out = VertexSet::new();
    for tok in arg.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: u32 = tok.parse().map_err(|_| bad(format!("{tok:?} is not a vertex")))?;
        if !g.contains(VertexId(v)) {
            return Err(bad(format!("vertex {v} is not in the graph")));
        }
        if !out.insert(VertexId(v)) {
            return Err(bad(format!("vertex {v} listed twice")));
        }
    }
    Ok(out)
}

/// `"1-2,3-6,4-5"`; each pair names the least edge between its ends. The
/// result must be a perfect matching.
pub fn parse_matching(g: &Graph, arg: &str) -> Result<Matching> {
    let bad = |msg: String| CliError::Argument { what: "matching", msg };
    let mut pairs = Vec::new();
    for tok in arg.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = tok.split_once('-').ok_or_else(|| bad(format!("{tok:?} is not of the form u-v")))?;
        let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| bad(format!("{s:?} is not a vertex")));
        pairs.push((parse(a)?, parse(b)?));
    }
    let m = Matching::from_pairs(g, &pairs)?;
    m.check_perfect(g)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tightcut_core::vset;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let g = parse_graph("# paw\n\n4 4\n1 2\n 1 3\n# x\n1 4\n3 4\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
    }

    #[test]
    fn parallel_edges_kept() {
        let g = parse_graph("2 2\n1 2\n2 1\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |text: &str| match parse_graph(text) {
            Err(CliError::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("4 1\n\n1 5\n"), 3);
        assert_eq!(line("# c\n4 x\n"), 2);
        assert_eq!(line("4 1\n1 1\n"), 2);
        assert_eq!(line("4 2\n1 2\n"), 2);
        assert_eq!(line("4 1\n1 2\n3 4\n"), 3);
        assert_eq!(line("4 1\n1 2 3\n"), 2);
        assert_eq!(line(""), 0);
    }

    #[test]
    fn shore_and_matching_arguments() {
        let g = parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
        assert_eq!(parse_shore(&g, "1, 2").unwrap(), vset([1, 2]));
        assert!(parse_shore(&g, "1,1").is_err());
        assert!(parse_shore(&g, "9").is_err());
        let m = parse_matching(&g, "1-2,3-4").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(parse_matching(&g, "1-2").unwrap_err().exit_code(), 2);
        assert_eq!(parse_matching(&g, "1:2").unwrap_err().exit_code(), 1);
    }
}
