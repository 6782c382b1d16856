//! Weight files: `v <id> <weight>` and `e <id> <weight>` lines with 0-based
//! ids; elements without a line weigh 1.

use std::fmt::Write as _;

use totalmatch_core::graph::Graph;
use totalmatch_core::matching::WeightVector;

use crate::error::{parse_err, Result};

pub fn parse_weights(g: &Graph, text: &str) -> Result<WeightVector> {
    let mut vertex = vec![1.0; g.n()];
    let mut edge = vec![1.0; g.m()];
    for_each_entry(text, |line, kind, id, value| {
        let w: f64 = value
            .parse()
            .ok()
            .filter(|w: &f64| w.is_finite())
            .ok_or_else(|| parse_err(line, format!("bad weight `{value}`")))?;
        let slot = match kind {
            'v' => vertex.get_mut(id),
            _ => edge.get_mut(id),
        };
        *slot.ok_or_else(|| parse_err(line, format!("{kind} {id} out of range")))? = w;
        Ok(())
    })?;
    Ok(WeightVector::new(g, vertex, edge)?)
}

pub fn write_weights(g: &Graph, w: &WeightVector) -> String {
    let layout = w.layout();
    let mut out = String::new();
    for (i, x) in layout.iter().enumerate() {
        let (kind, id) = if i < g.n() {
            ('v', i)
        } else {
            ('e', i - g.n())
        };
        let _ = writeln!(out, "{kind} {id} {x}");
    }
    out
}

/// Calls `f(line, kind, id, value)` for each `v`/`e` line, skipping blanks
/// and `#` comments.
pub(crate) fn for_each_entry(
    text: &str,
    mut f: impl FnMut(usize, char, usize, &str) -> Result<()>,
) -> Result<()> {
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tok: Vec<&str> = body.split_whitespace().collect();
        let [kind, id, value] = tok[..] else {
            return Err(parse_err(line, "expected `v|e <id> <value>`"));
        };
        let kind = match kind {
            "v" => 'v',
            "e" => 'e',
            _ => return Err(parse_err(line, format!("unknown element kind `{kind}`"))),
        };
        let id = id
            .parse()
            .map_err(|_| parse_err(line, format!("bad id `{id}`")))?;
        f(line, kind, id, value)?;
    }
    Ok(())
}
