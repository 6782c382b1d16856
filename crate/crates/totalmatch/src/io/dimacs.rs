//! DIMACS edge format: `c` comments, a `p edge n m` header and `e u v` lines
//! with 1-based vertices.

use std::fmt::Write as _;
use std::path::Path;

use totalmatch_core::Graph;

use crate::error::{parse_err, Error, Result};

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                let kind = tok.next();
                if !matches!(kind, Some("edge" | "edges" | "col")) {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                }
                let n = number(tok.next(), line, "vertex count")?;
                let m = number(tok.next(), line, "edge count")?;
                if tok.next().is_some() {
                    return Err(parse_err(line, "trailing tokens after the header"));
                }
                header = Some((n, m, line));
            }
            Some("e") => {
                let (n, _, _) =
                    header.ok_or_else(|| parse_err(line, "edge before the problem line"))?;
                let u = number(tok.next(), line, "endpoint")?;
                let v = number(tok.next(), line, "endpoint")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_err(line, format!("vertex {x} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(t) => return Err(parse_err(line, format!("unknown line type `{t}`"))),
        }
    }
    let (n, m, line) = header.ok_or_else(|| parse_err(0, "missing `p edge` line"))?;
    if edges.len() != m {
        return Err(parse_err(
            line,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, edges)?)
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let t = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{t}`")))
}

/// DIMACS text with an optional leading comment; edges keep their ids.
pub fn write_dimacs(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "c {l}");
        }
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn load_dimacs(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    parse_dimacs(&text).map_err(|e| e.in_file(path))
}

pub fn save_dimacs(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_dimacs(g, None))?;
    Ok(())
}
