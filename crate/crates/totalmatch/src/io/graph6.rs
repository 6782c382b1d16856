//! graph6: the vertex count, then the upper triangle of the adjacency
//! matrix column by column, six bits per printable byte.

use totalmatch_core::Graph;

use crate::error::{parse_err, Result};

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let s = line.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("byte {b} outside the graph6 range")));
    }
    let (n, rest) = decode_n(bytes)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if rest.len() != need {
        return Err(parse_err(
            1,
            format!("{n} vertices need {need} data bytes, got {}", rest.len()),
        ));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // stable edge ids: lexicographic by (u, v)
    edges.sort_unstable();
    Ok(Graph::new(n, edges)?)
}

fn decode_n(b: &[u8]) -> Result<(usize, &[u8])> {
    let val = |s: &[u8]| {
        s.iter()
            .fold(0usize, |acc, &c| acc << 6 | (c - 63) as usize)
    };
    match b {
        [] => Err(parse_err(1, "empty graph6 string")),
        [126, 126, rest @ ..] if rest.len() >= 6 => Ok((val(&rest[..6]), &rest[6..])),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => Ok((val(&rest[..3]), &rest[3..])),
        [126, ..] => Err(parse_err(1, "truncated vertex count")),
        [c, rest @ ..] => Ok(((c - 63) as usize, rest)),
    }
}

/// Encodes `g` without header or trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("printable bytes")
}
