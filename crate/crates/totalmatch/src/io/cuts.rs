//! Cut text: `family rhs [vertex ids | edge ids]`, one inequality per line.
//! Parsing rebuilds each cut from its family and support, so a line that
//! does not describe a genuine member of the family is rejected.

use std::fmt::Write as _;

use totalmatch_core::graph::Graph;
use totalmatch_core::separation::{
    cycle_cut, edge_triangle_cut, even_clique_cut, nonnegativity_cut, odd_clique_cut,
    vertex_clique_cut, vertex_star_cut, CutInequality, Family,
};

use crate::error::{parse_err, Result};

pub fn write_cuts(cuts: &[CutInequality]) -> String {
    let mut out = String::new();
    for c in cuts {
        let _ = writeln!(out, "{c}");
    }
    out
}

pub fn parse_cuts(g: &Graph, text: &str) -> Result<Vec<CutInequality>> {
    let mut cuts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            cuts.push(parse_cut_line(g, body, i + 1)?);
        }
    }
    Ok(cuts)
}

/// Parses one line; `rhs` may differ from the family's own right-hand side,
/// which lets corrupted inequalities be replayed on purpose.
pub fn parse_cut_line(g: &Graph, body: &str, line: usize) -> Result<CutInequality> {
    let err = |msg: String| parse_err(line, msg);
    let (head, support) = body
        .split_once('[')
        .ok_or_else(|| err("expected `family rhs [v ids | e ids]`".into()))?;
    let support = support
        .strip_suffix(']')
        .ok_or_else(|| err("missing `]`".into()))?;
    let mut head = head.split_whitespace();
    let (Some(family), Some(rhs), None) = (head.next(), head.next(), head.next()) else {
        return Err(err("expected `family rhs` before `[`".into()));
    };
    let family: Family = family.parse().map_err(|e| err(format!("{e}")))?;
    let rhs: f64 = rhs.parse().map_err(|_| err(format!("bad rhs `{rhs}`")))?;
    let (vs, es) = support
        .split_once('|')
        .ok_or_else(|| err("missing `|` between vertex and edge ids".into()))?;
    let ids = |s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| err(format!("bad id `{t}`"))))
            .collect()
    };
    let (vertices, mut edges) = (ids(vs)?, ids(es)?);
    let built = rebuild(g, family, &vertices, &edges).map_err(|e| err(format!("{e}")))?;
    edges.sort_unstable();
    let mut got_v = vertices.clone();
    let mut want_v = built.vertices.clone();
    got_v.sort_unstable();
    want_v.sort_unstable();
    if got_v != want_v || edges != built.edges {
        return Err(err(format!("support does not match a {family} inequality")));
    }
    Ok(CutInequality { rhs, ..built })
}

fn rebuild(
    g: &Graph,
    family: Family,
    vertices: &[usize],
    edges: &[usize],
) -> totalmatch_core::Result<CutInequality> {
    use totalmatch_core::Error::InvalidCut;
    match family {
        Family::VertexStar => match vertices {
            [v] => vertex_star_cut(g, *v),
            _ => Err(InvalidCut("a star has one vertex".into())),
        },
        Family::EdgeTriangle => match edges {
            [e] => edge_triangle_cut(g, *e),
            _ => Err(InvalidCut("an edge triangle has one edge".into())),
        },
        Family::NonNegativity => match (vertices, edges) {
            ([v], []) => nonnegativity_cut(g, *v),
            ([], [e]) => nonnegativity_cut(g, g.n() + *e),
            _ => Err(InvalidCut("nonnegativity has one element".into())),
        },
        Family::VertexClique => vertex_clique_cut(g, vertices),
        Family::Cycle => cycle_cut(g, vertices),
        Family::EvenClique => even_clique_cut(g, vertices),
        Family::OddClique => odd_clique_cut(g, vertices),
    }
}
