use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::fixtures::{CHVATAL_EDGES, TUTTE_EDGES, WATKINS_EDGES};
use super::Graph;
use crate::{Error, Result};

/// Named graph constructions.
///
/// Parsed from `cycle(5)`, `C5`, `complete(12)`, `K12`, `star(4)`,
/// `wheel(5)`, `petersen`, `chvatal`, `tutte`, `watkins` (case-insensitive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    /// Cycle on `k >= 3` vertices.
    Cycle(usize),
    /// Complete graph on `h >= 1` vertices.
    Complete(usize),
    /// Star `K_{1,k}` with center 0.
    Star(usize),
    /// Cycle `C_k` on vertices `0..k` plus a hub `k` joined to all of them.
    Wheel(usize),
    Petersen,
    Chvatal,
    Tutte,
    Watkins,
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Cycle(k) => write!(f, "cycle({k})"),
            NamedGraph::Complete(h) => write!(f, "complete({h})"),
            NamedGraph::Star(k) => write!(f, "star({k})"),
            NamedGraph::Wheel(k) => write!(f, "wheel({k})"),
            NamedGraph::Petersen => f.write_str("petersen"),
            NamedGraph::Chvatal => f.write_str("chvatal"),
            NamedGraph::Tutte => f.write_str("tutte"),
            NamedGraph::Watkins => f.write_str("watkins"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower: String = s.trim().to_lowercase();
        let unknown = || Error::UnknownGraph(s.to_string());
        match lower.as_str() {
            "petersen" => return Ok(NamedGraph::Petersen),
            "chvatal" | "chvátal" => return Ok(NamedGraph::Chvatal),
            "tutte" => return Ok(NamedGraph::Tutte),
            "watkins" => return Ok(NamedGraph::Watkins),
            _ => {}
        }
        let (head, arg) = match lower.find('(') {
            Some(i) if lower.ends_with(')') => (&lower[..i], &lower[i + 1..lower.len() - 1]),
            Some(_) => return Err(unknown()),
            None => {
                let split = lower
                    .find(|c: char| c.is_ascii_digit())
                    .ok_or_else(unknown)?;
                (&lower[..split], &lower[split..])
            }
        };
        let k: usize = arg.trim().parse().map_err(|_| unknown())?;
        match head.trim() {
            "cycle" | "c" => Ok(NamedGraph::Cycle(k)),
            "complete" | "k" => Ok(NamedGraph::Complete(k)),
            "star" => Ok(NamedGraph::Star(k)),
            "wheel" | "w" => Ok(NamedGraph::Wheel(k)),
            _ => Err(unknown()),
        }
    }
}

/// Builds a named graph.
pub fn named_graph(name: &NamedGraph) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = match *name {
        NamedGraph::Cycle(k) => {
            if k < 3 {
                return Err(Error::InvalidParameter(format!(
                    "cycle needs k >= 3, got {k}"
                )));
            }
            (0..k).map(|i| (i, (i + 1) % k)).collect()
        }
        NamedGraph::Complete(h) => {
            if h == 0 {
                return Err(Error::InvalidParameter(
                    "complete graph needs h >= 1".into(),
                ));
            }
            let mut e = Vec::new();
            for u in 0..h {
                for v in u + 1..h {
                    e.push((u, v));
                }
            }
            e
        }
        NamedGraph::Star(k) => (1..=k).map(|i| (0, i)).collect(),
        NamedGraph::Wheel(k) => {
            if k < 3 {
                return Err(Error::InvalidParameter(format!(
                    "wheel needs k >= 3, got {k}"
                )));
            }
            let mut e: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            e.extend((0..k).map(|i| (i, k)));
            e
        }
        NamedGraph::Petersen => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            e
        }
        NamedGraph::Chvatal => CHVATAL_EDGES.to_vec(),
        NamedGraph::Tutte => TUTTE_EDGES.to_vec(),
        NamedGraph::Watkins => WATKINS_EDGES.to_vec(),
    };
    let n = match *name {
        NamedGraph::Cycle(k) | NamedGraph::Complete(k) => k,
        NamedGraph::Star(k) | NamedGraph::Wheel(k) => k + 1,
        NamedGraph::Petersen => 10,
        NamedGraph::Chvatal => 12,
        NamedGraph::Tutte => 46,
        NamedGraph::Watkins => 50,
    };
    Graph::new(n, edges)
}
