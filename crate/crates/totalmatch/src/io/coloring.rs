//! Total coloring files: one `v <id> <color>` or `e <id> <color>` line per
//! element, 0-based ids.

use std::fmt::Write as _;

use totalmatch_core::coloring::TotalColoring;
use totalmatch_core::graph::Graph;

use super::weights::for_each_entry;
use crate::error::{parse_err, Result};

pub fn write_coloring(g: &Graph, c: &TotalColoring) -> String {
    let mut out = String::new();
    for (i, col) in c.colors().iter().enumerate() {
        if i < g.n() {
            let _ = writeln!(out, "v {i} {col}");
        } else {
            let _ = writeln!(out, "e {} {col}", i - g.n());
        }
    }
    out
}

/// Reads a complete, proper coloring.
pub fn parse_coloring(g: &Graph, text: &str) -> Result<TotalColoring> {
    let mut colors: Vec<Option<usize>> = vec![None; g.num_elements()];
    for_each_entry(text, |line, kind, id, value| {
        let index = match kind {
            'v' if id < g.n() => id,
            'e' if id < g.m() => g.n() + id,
            _ => return Err(parse_err(line, format!("{kind} {id} out of range"))),
        };
        let col = value
            .parse()
            .map_err(|_| parse_err(line, format!("bad color `{value}`")))?;
        if colors[index].replace(col).is_some() {
            return Err(parse_err(line, format!("{kind} {id} colored twice")));
        }
        Ok(())
    })?;
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| parse_err(0, format!("element {:?} has no color", g.element_at(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TotalColoring::new(g, colors)?)
}
