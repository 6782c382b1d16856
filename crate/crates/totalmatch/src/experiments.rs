//! Per-instance experiment runs and their table rows.

use std::time::Instant;

use log::info;
use rayon::prelude::*;

use totalmatch_core::coloring::{
    assignment_lp, assignment_mip, covering_colgen, default_color_count, TotalColoring,
};
use totalmatch_core::cutloop::{run_cut_loop, total_matching_number, CutLoopConfig, CutLoopReport};
use totalmatch_core::matching::{mwtmp_exact, WeightVector};
use totalmatch_core::separation::{CutInequality, Family};

use crate::error::Result;
use crate::instances::Instance;
use crate::table::Table;

pub const COLORING_HEADERS: [&str; 10] = [
    "name", "n", "m", "type", "delta", "chiT", "LP", "SCLP", "iters", "runtime",
];

pub const MATCHING_HEADERS: [&str; 11] = [
    "name", "n", "m", "nu", "alpha", "nuT", "bound", "gap", "cuts", "rounds", "runtime",
];

/// Runs `f` over the instances on the rayon pool; results keep input order.
pub fn run_batch<T, F>(instances: &[Instance], f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(&Instance) -> Result<T> + Sync + Send,
{
    instances.par_iter().map(f).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColoringRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    /// Total chromatic number, when the exact model was run.
    pub chi: Option<usize>,
    pub lp: f64,
    pub sclp: f64,
    pub iterations: usize,
    pub runtime: f64,
    pub coloring: Option<TotalColoring>,
}

impl ColoringRow {
    /// `1` when `chi = Delta + 1`, `2` when `chi = Delta + 2`.
    pub fn graph_type(&self) -> Option<u8> {
        match self.chi? {
            c if c == self.delta + 1 => Some(1),
            c if c == self.delta + 2 => Some(2),
            _ => None,
        }
    }

    pub fn cells(&self, with_runtime: bool) -> Vec<String> {
        vec![
            self.name.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.graph_type().map(|t| t.to_string()).unwrap_or_default(),
            self.delta.to_string(),
            self.chi.map(|c| c.to_string()).unwrap_or_default(),
            format!("{:.4}", self.lp),
            format!("{:.4}", self.sclp),
            self.iterations.to_string(),
            runtime_cell(self.runtime, with_runtime),
        ]
    }
}

/// Assignment LP, covering LP by column generation and, if `exact`, the
/// assignment MIP.
pub fn coloring_row(inst: &Instance, exact: bool) -> Result<ColoringRow> {
    let g = &inst.graph;
    let start = Instant::now();
    let k = default_color_count(g);
    let lp = assignment_lp(g, k)?;
    let cg = covering_colgen(g)?;
    let (chi, coloring) = if exact {
        match assignment_mip(g, k)? {
            Some((chi, c)) => (Some(chi), Some(c)),
            None => (None, None),
        }
    } else {
        (None, None)
    };
    let runtime = start.elapsed().as_secs_f64();
    info!(
        "{}: LP {lp:.4} SCLP {:.4} in {runtime:.2}s",
        inst.name, cg.value
    );
    Ok(ColoringRow {
        name: inst.name.clone(),
        n: g.n(),
        m: g.m(),
        delta: g.max_degree(),
        chi,
        lp,
        sclp: cg.value,
        iterations: cg.iterations,
        runtime,
        coloring,
    })
}

pub fn coloring_table(rows: &[ColoringRow], with_runtime: bool) -> Table {
    let mut t = Table::new(&COLORING_HEADERS);
    for r in rows {
        t.push(r.cells(with_runtime));
    }
    t
}

/// A named subset of the separable families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySet {
    pub label: String,
    pub families: Vec<Family>,
}

impl std::str::FromStr for FamilySet {
    type Err = String;

    /// `basic`, `all`, or a `+`-separated list of `clique`, `cycle`,
    /// `even-clique`.
    fn from_str(s: &str) -> Result<Self, String> {
        let families = match s {
            "basic" | "none" => Vec::new(),
            "all" => vec![Family::VertexClique, Family::Cycle, Family::EvenClique],
            _ => s
                .split('+')
                .map(|f| match f {
                    "clique" | "vertex-clique" => Ok(Family::VertexClique),
                    "cycle" | "cycle-2k3" => Ok(Family::Cycle),
                    "even-clique" | "even" => Ok(Family::EvenClique),
                    _ => Err(format!("unknown family `{f}` (clique, cycle, even-clique)")),
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(FamilySet {
            label: s.to_string(),
            families,
        })
    }
}

/// The sets of the tables: basic relaxation, clique cuts, cycle cuts, all.
pub fn default_family_sets() -> Vec<FamilySet> {
    ["basic", "clique", "cycle", "all"]
        .iter()
        .map(|s| s.parse().expect("known sets"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchingRow {
    pub name: String,
    pub family_set: String,
    pub n: usize,
    pub m: usize,
    pub nu: usize,
    pub alpha: usize,
    pub nu_t: f64,
    pub bound: f64,
    pub gap: f64,
    pub cuts: usize,
    pub rounds: usize,
    pub runtime: f64,
    pub report: CutLoopReport,
}

impl MatchingRow {
    pub fn cells(&self, with_runtime: bool) -> Vec<String> {
        vec![
            format!("{}:{}", self.name, self.family_set),
            self.n.to_string(),
            self.m.to_string(),
            self.nu.to_string(),
            self.alpha.to_string(),
            fmt_num(self.nu_t),
            format!("{:.4}", self.bound),
            format!("{:.2}", self.gap),
            self.cuts.to_string(),
            self.rounds.to_string(),
            runtime_cell(self.runtime, with_runtime),
        ]
    }

    pub fn cuts(&self) -> &[CutInequality] {
        &self.report.cuts
    }
}

/// Cut loops for each family set on one instance, with the remaining
/// settings taken from `base`. `nu`, `alpha` and `nu_T`
/// are computed once; with weights, `nu_T` is the weighted optimum.
pub fn matching_rows(
    inst: &Instance,
    sets: &[FamilySet],
    weights: Option<&WeightVector>,
    base: &CutLoopConfig,
) -> Result<Vec<MatchingRow>> {
    let g = &inst.graph;
    let exact = total_matching_number(g)?;
    let nu_t = match weights {
        Some(w) => mwtmp_exact(g, w)?.0,
        None => exact.nu_t as f64,
    };
    let unit = WeightVector::unit(g);
    let w = weights.unwrap_or(&unit);
    let mut rows = Vec::new();
    for set in sets {
        let cfg = CutLoopConfig {
            families: set.families.clone(),
            compute_nu_t: false,
            ..base.clone()
        };
        let start = Instant::now();
        let report = run_cut_loop(g, w, &cfg)?;
        let runtime = start.elapsed().as_secs_f64();
        let gap = if nu_t > 0.0 {
            (report.final_bound - nu_t) / nu_t * 100.0
        } else {
            0.0
        };
        info!(
            "{}:{}: bound {:.4} in {runtime:.2}s",
            inst.name, set.label, report.final_bound
        );
        rows.push(MatchingRow {
            name: inst.name.clone(),
            family_set: set.label.clone(),
            n: g.n(),
            m: g.m(),
            nu: exact.nu,
            alpha: exact.alpha,
            nu_t,
            bound: report.final_bound,
            gap,
            cuts: report.cuts.len(),
            rounds: report.rounds,
            runtime,
            report,
        });
    }
    Ok(rows)
}

pub fn matching_table(rows: &[MatchingRow], with_runtime: bool) -> Table {
    let mut t = Table::new(&MATCHING_HEADERS);
    for r in rows {
        t.push(r.cells(with_runtime));
    }
    t
}

/// Means per (group, family set), in order of first appearance; `group`
/// maps an instance name to its aggregate label.
pub fn aggregate_matching(
    rows: &[MatchingRow],
    group: impl Fn(&str) -> String,
    with_runtime: bool,
) -> Table {
    let mut keys: Vec<(String, String)> = Vec::new();
    for r in rows {
        let key = (group(&r.name), r.family_set.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    let mut t = Table::new(&MATCHING_HEADERS);
    for (label, set) in keys {
        let members: Vec<&MatchingRow> = rows
            .iter()
            .filter(|r| group(&r.name) == label && r.family_set == set)
            .collect();
        let mean = |f: &dyn Fn(&MatchingRow) -> f64| {
            members.iter().map(|r| f(r)).sum::<f64>() / members.len() as f64
        };
        t.push(vec![
            format!("{label}:{set}"),
            fmt_num(mean(&|r| r.n as f64)),
            fmt_num(mean(&|r| r.m as f64)),
            fmt_num(mean(&|r| r.nu as f64)),
            fmt_num(mean(&|r| r.alpha as f64)),
            fmt_num(mean(&|r| r.nu_t)),
            format!("{:.4}", mean(&|r| r.bound)),
            format!("{:.2}", mean(&|r| r.gap)),
            fmt_num(mean(&|r| r.cuts as f64)),
            fmt_num(mean(&|r| r.rounds as f64)),
            runtime_cell(mean(&|r| r.runtime), with_runtime),
        ]);
    }
    t
}

/// Integers without decimals, everything else with two.
fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.0}")
    } else {
        format!("{x:.2}")
    }
}

fn runtime_cell(seconds: f64, with_runtime: bool) -> String {
    if with_runtime {
        format!("{seconds:.3}")
    } else {
        String::new()
    }
}
