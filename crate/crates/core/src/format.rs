//! Text graph formats.
//!
//! Two inputs are accepted:
//!
//! * plain edge lists: a header `n m`, then `m` lines `u v` with 0-based ids;
//! * DIMACS: `p edge n m`, then `e u v` lines with 1-based ids.
//!
//! Blank lines and lines starting with `#` are ignored in both, as are `c`
//! comment lines in DIMACS input.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return Err(Error::parse(1, "empty input"));
    };
    let mut fields = header.split_whitespace();
    let dimacs = header.starts_with('p') || header.starts_with('c');
    if !dimacs {
        let n = number(fields.next(), header_line, "vertex count")?;
        let m = number(fields.next(), header_line, "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let mut f = l.split_whitespace();
            let u = number(f.next(), line, "edge endpoint")?;
            let v = number(f.next(), line, "edge endpoint")?;
            if f.next().is_some() {
                return Err(Error::parse(line, "trailing tokens after edge"));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(
                header_line,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        return Graph::new(n, &edges);
    }

    let mut n = None;
    let mut edges = Vec::new();
    for (line, l) in std::iter::once((header_line, header)).chain(lines) {
        let mut f = l.split_whitespace();
        match f.next() {
            Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                let _kind = f.next().ok_or_else(|| Error::parse(line, "missing format"))?;
                n = Some(number(f.next(), line, "vertex count")?);
                let _m = number(f.next(), line, "edge count")?;
            }
            Some("e") => {
                if n.is_none() {
                    return Err(Error::parse(line, "edge before problem line"));
                }
                let u = number(f.next(), line, "edge endpoint")?;
                let v = number(f.next(), line, "edge endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::parse(line, "DIMACS vertex ids are 1-based"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(Error::parse(line, format!("unexpected token `{other}`"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| Error::parse(header_line, "missing problem line"))?;
    Graph::new(n, &edges)
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

/// Plain edge-list text for `g`, readable by [`parse_graph`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
