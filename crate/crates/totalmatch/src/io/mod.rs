//! Text formats: graphs (DIMACS, graph6), weights, cuts and colorings.

mod coloring;
mod cuts;
mod dimacs;
mod graph6;
mod weights;

use std::path::Path;

use totalmatch_core::Graph;

pub use coloring::{parse_coloring, write_coloring};
pub use cuts::{parse_cut_line, parse_cuts, write_cuts};
pub use dimacs::{load_dimacs, parse_dimacs, save_dimacs, write_dimacs};
pub use graph6::{parse_graph6, write_graph6};
pub use weights::{parse_weights, write_weights};

use crate::error::{parse_err, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    Graph6,
}

impl GraphFormat {
    /// `.g6` and `.graph6` are graph6; anything else is read as DIMACS.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphFormat::Graph6,
            _ => GraphFormat::Dimacs,
        }
    }
}

/// Loads a graph, choosing the format from the extension. A graph6 file
/// must hold exactly one graph.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    let parsed = match GraphFormat::from_path(path) {
        GraphFormat::Dimacs => parse_dimacs(&text),
        GraphFormat::Graph6 => {
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            match (lines.next(), lines.next()) {
                (Some(l), None) => parse_graph6(l),
                (None, _) => Err(parse_err(1, "no graph")),
                (Some(_), Some(_)) => Err(parse_err(2, "more than one graph")),
            }
        }
    };
    parsed.map_err(|e| e.in_file(path))
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = match GraphFormat::from_path(path) {
        GraphFormat::Dimacs => write_dimacs(g, None),
        GraphFormat::Graph6 => write_graph6(g) + "\n",
    };
    std::fs::write(path, text)?;
    Ok(())
}
