//! Instance lookup and generation.

use std::path::{Path, PathBuf};

use totalmatch_core::graph::{named_graph, random_cubic, random_gnp, NamedGraph};
use totalmatch_core::Graph;

use crate::error::{Error, Result};
use crate::io::load_graph;

/// Overrides the instance directory.
pub const INSTANCE_DIR_ENV: &str = "TOTALMATCH_INSTANCES";

const EXTENSIONS: [&str; 4] = ["dimacs", "col", "g6", "graph6"];

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// `$TOTALMATCH_INSTANCES`, or `instances` in the working directory.
pub fn instance_dir() -> PathBuf {
    std::env::var_os(INSTANCE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("instances"))
}

/// Resolves `spec` as a file path, then as a fixture in `dir` (with or
/// without extension), then as a built-in name such as `petersen` or
/// `cycle(5)`.
pub fn resolve(spec: &str, dir: &Path) -> Result<Instance> {
    let as_path = Path::new(spec);
    if as_path.is_file() {
        return Ok(Instance {
            name: stem(as_path),
            graph: load_graph(as_path)?,
        });
    }
    if let Some(path) = fixture(spec, dir) {
        return Ok(Instance {
            name: spec.to_string(),
            graph: load_graph(path)?,
        });
    }
    match spec.parse::<NamedGraph>() {
        Ok(name) => Ok(Instance {
            name: spec.to_string(),
            graph: named_graph(&name)?,
        }),
        Err(_) => Err(Error::MissingInstance(spec.to_string())),
    }
}

fn fixture(name: &str, dir: &Path) -> Option<PathBuf> {
    let plain = dir.join(name);
    if plain.is_file() {
        return Some(plain);
    }
    EXTENSIONS
        .iter()
        .map(|ext| dir.join(format!("{name}.{ext}")))
        .find(|p| p.is_file())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Every graph file in `dir` whose name starts with `prefix`, sorted by name.
pub fn fixtures_with_prefix(dir: &Path, prefix: &str) -> Result<Vec<Instance>> {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return Ok(Vec::new());
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            p.file_name()
                .is_some_and(|f| f.to_string_lossy().starts_with(prefix))
        })
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            Ok(Instance {
                name: stem(p),
                graph: load_graph(p)?,
            })
        })
        .collect()
}

/// A random instance family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Cubic { n: usize },
    Gnp { n: usize, p: f64 },
}

impl Generator {
    /// Family label without the seed, e.g. `cubic-60` or `gnp-80-0.15`.
    pub fn label(&self) -> String {
        match self {
            Generator::Cubic { n } => format!("cubic-{n}"),
            Generator::Gnp { n, p } => format!("gnp-{n}-{p}"),
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Instance> {
        let graph = match *self {
            Generator::Cubic { n } => random_cubic(n, seed)?,
            Generator::Gnp { n, p } => random_gnp(n, p, seed)?,
        };
        Ok(Instance {
            name: format!("{}-s{seed}", self.label()),
            graph,
        })
    }
}

/// Parses `3`, `1,4,9`, `1..11` (exclusive) or `1..=10`.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::Config(format!("bad seed list `{s}`"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..=") {
        return Ok((num(a)?..=num(b)?).collect());
    }
    if let Some((a, b)) = s.split_once("..") {
        return Ok((num(a)?..num(b)?).collect());
    }
    s.split(',').map(num).collect()
}
