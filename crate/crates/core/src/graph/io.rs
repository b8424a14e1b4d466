//! Edge-list text format and DOT export.
//!
//! ```text
//! n m
//! u1 v1
//! ...
//! um vm
//! ```
//!
//! Labels are 1-based and whitespace separated. Blank lines are ignored.

use std::fmt::Write as _;

use super::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize), GraphError> {
    let mut fields = text.split_whitespace();
    let mut next = |name: &str| -> Result<usize, GraphError> {
        let field = fields
            .next()
            .ok_or_else(|| parse_err(line, format!("expected {what}, missing {name}")))?;
        field
            .parse()
            .map_err(|_| parse_err(line, format!("{name} {field:?} is not a non-negative integer")))
    };
    let a = next("first value")?;
    let b = next("second value")?;
    if fields.next().is_some() {
        return Err(parse_err(line, format!("expected {what}, found extra fields")));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (n, m) = parse_pair(header_line, header, "header `n m`")?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, body) in lines {
        if seen == m {
            return Err(parse_err(line, format!("more than the {m} declared edges")));
        }
        let (u, v) = parse_pair(line, body, "edge `u v`")?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(parse_err(line, format!("vertex {w} is outside 1..={n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if !g.add_edge(u - 1, v - 1)? {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        seen += 1;
    }
    if seen < m {
        let last = text.lines().count().max(1);
        return Err(parse_err(
            last,
            format!("header declares {m} edges but only {seen} were given"),
        ));
    }
    Ok(g)
}

/// Serializes `g` with edges in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n() {
        writeln!(out, "  {};", v + 1).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", u + 1, v + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
