//! Optional TOML run configuration; command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Every key is optional.
///
/// ```toml
/// instances = ["petersen", "cycle(5)"]   # or: cubic = 60 / gnp = 80, p = 0.15
/// seeds = "0..10"
/// families = ["basic", "cycle", "all"]
/// format = "markdown"
/// output = "table.md"
/// max_rounds = 50
/// violation_eps = 1e-6
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub instances: Option<Vec<String>>,
    pub cubic: Option<usize>,
    pub gnp: Option<usize>,
    pub p: Option<f64>,
    pub seeds: Option<String>,
    pub families: Option<Vec<String>>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub max_rounds: Option<usize>,
    pub violation_eps: Option<f64>,
    pub exact: Option<bool>,
    pub aggregate: Option<bool>,
    pub runtime: Option<bool>,
}

pub fn load_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}
