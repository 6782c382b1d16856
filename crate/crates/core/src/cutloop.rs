//! Cutting-plane upper bounds on the maximum weighted total matching, and
//! the exact total matching number used for gap reporting.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::float::FloatCore;

use crate::graph::{maximum_stable_set, ElementSet, Graph};
use crate::matching::{
    add_basic_rows, maximum_matching, mwtmp_exact, mwtmp_model, TotalMatching, WeightVector,
};
use crate::mp::{self, LpSession, MipOptions, ModelSpec, Relation, Sense, Status};
use crate::separation::{
    separate_cycle, separate_even_clique_with, separate_vertex_clique_with, CliqueBackend,
    CutInequality, CycleBackend, Family, FractionalPoint,
};
use crate::{Error, Result, VIOLATION_EPS};

/// Families the cut loop can separate, in the order they are tried.
pub const SEPARABLE: [Family; 3] = [Family::VertexClique, Family::Cycle, Family::EvenClique];

#[derive(Debug, Clone, PartialEq)]
pub struct CutLoopConfig {
    /// Subset of [`SEPARABLE`]; duplicates are ignored.
    pub families: Vec<Family>,
    pub max_rounds: usize,
    /// A cut is added only if its violation exceeds this.
    pub violation_eps: f64,
    /// Also compute the exact optimum and the percentage gap.
    pub compute_nu_t: bool,
    pub cycle_backend: CycleBackend,
    pub clique_backend: CliqueBackend,
}

impl Default for CutLoopConfig {
    fn default() -> Self {
        CutLoopConfig {
            families: SEPARABLE.to_vec(),
            max_rounds: 50,
            violation_eps: VIOLATION_EPS,
            compute_nu_t: false,
            cycle_backend: CycleBackend::default(),
            clique_backend: CliqueBackend::default(),
        }
    }
}

impl CutLoopConfig {
    pub fn with_families(families: &[Family]) -> Self {
        CutLoopConfig {
            families: families.to_vec(),
            ..CutLoopConfig::default()
        }
    }

    fn check(&self) -> Result<()> {
        if self.max_rounds == 0 {
            return Err(Error::InvalidParameter(
                "max_rounds must be at least 1".into(),
            ));
        }
        if let Some(f) = self.families.iter().find(|f| !SEPARABLE.contains(f)) {
            return Err(Error::InvalidParameter(format!(
                "family {f} is not separated by the cut loop"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CutLoopReport {
    /// LP bound after each solve; the first entry is the basic relaxation.
    pub bounds: Vec<f64>,
    /// Separation rounds that added at least one cut.
    pub rounds: usize,
    pub cuts: Vec<CutInequality>,
    pub final_bound: f64,
    pub nu_t: Option<f64>,
    /// `(bound - nu_t) / nu_t * 100`.
    pub gap: Option<f64>,
}

impl CutLoopReport {
    pub fn cuts_of(&self, family: Family) -> usize {
        self.cuts.iter().filter(|c| c.family == family).count()
    }
}

/// Runs the cutting-plane loop from the basic relaxation.
pub fn run_cut_loop(g: &Graph, w: &WeightVector, cfg: &CutLoopConfig) -> Result<CutLoopReport> {
    cfg.check()?;
    let mut report = CutLoopReport::default();
    match cut_loop(g, w, cfg, &mut report) {
        Ok(()) => Ok(report),
        Err(e) => Err(Error::CutLoop {
            source: Box::new(e),
            partial: Box::new(report),
        }),
    }
}

fn cut_loop(
    g: &Graph,
    w: &WeightVector,
    cfg: &CutLoopConfig,
    report: &mut CutLoopReport,
) -> Result<()> {
    let spec = mwtmp_model(g, w)?;
    let mut lp = LpSession::new(&spec)?;
    solve_optimal(&mut lp)?;
    report.bounds.push(lp.objective());
    report.final_bound = lp.objective();
    for _ in 0..cfg.max_rounds {
        let values: Vec<f64> = lp.primal().iter().map(|v| v.clamp(0.0, 1.0)).collect();
        let p = FractionalPoint::new(g, values)?;
        let mut added = 0;
        for family in SEPARABLE {
            if !cfg.families.contains(&family) {
                continue;
            }
            let cut = match family {
                Family::VertexClique => separate_vertex_clique_with(g, &p, cfg.clique_backend)?,
                Family::Cycle => separate_cycle(g, &p, cfg.cycle_backend)?,
                _ => separate_even_clique_with(g, &p, cfg.clique_backend)?,
            };
            if let Some(cut) = cut.filter(|c| c.violation(p.values()) > cfg.violation_eps) {
                lp.add_constraint(cut.terms(), Relation::Le, cut.rhs)?;
                report.cuts.push(cut);
                added += 1;
            }
        }
        if added == 0 {
            break;
        }
        solve_optimal(&mut lp)?;
        report.rounds += 1;
        report.bounds.push(lp.objective());
        report.final_bound = lp.objective();
    }
    if cfg.compute_nu_t {
        let nu_t = if is_unit(g, w) {
            total_matching_number(g)?.nu_t as f64
        } else {
            mwtmp_exact(g, w)?.0
        };
        report.nu_t = Some(nu_t);
        report.gap = (nu_t > 0.0).then(|| (report.final_bound - nu_t) / nu_t * 100.0);
    }
    Ok(())
}

fn solve_optimal(lp: &mut LpSession) -> Result<()> {
    match lp.solve()? {
        Status::Optimal => Ok(()),
        s => Err(Error::Solver(mp::MpError::Numerical(format!(
            "relaxation reported {s:?}"
        )))),
    }
}

fn is_unit(g: &Graph, w: &WeightVector) -> bool {
    w.layout().len() == g.num_elements() && w.layout().iter().all(|&c| c == 1.0)
}

/// Unit-weight total matching number with the quantities that bracket it.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalMatchingNumber {
    pub nu_t: usize,
    /// Matching number.
    pub nu: usize,
    /// Stability number.
    pub alpha: usize,
    pub witness: TotalMatching,
}

/// Exact `nu_T(G)` for unit weights.
///
/// The vertices of a total matching form a stable set `S` and its edges a
/// matching of `G - S`, so `nu_T = max_S |S| + nu(G - S) <= floor((n + alpha) / 2)`.
/// A maximum stable set plus a maximum matching of the rest usually attains
/// this; otherwise the integer program is solved with cycle and clique cuts
/// at the root.
pub fn total_matching_number(g: &Graph) -> Result<TotalMatchingNumber> {
    let nu = maximum_matching(g).len();
    let stable = maximum_stable_set(g);
    let alpha = stable.len();
    let witness = stable_plus_matching(g, &stable);
    let upper = (g.n() + alpha) / 2;
    if witness.len() == upper {
        return Ok(TotalMatchingNumber {
            nu_t: upper,
            nu,
            alpha,
            witness,
        });
    }
    let unit = WeightVector::unit(g);
    let loop_report = run_cut_loop(g, &unit, &CutLoopConfig::default())?;
    let bound = upper.min((loop_report.final_bound + 1e-6).floor() as usize);
    if witness.len() == bound {
        return Ok(TotalMatchingNumber {
            nu_t: bound,
            nu,
            alpha,
            witness,
        });
    }
    let mut spec = ModelSpec::new(Sense::Max);
    for i in 0..g.num_elements() {
        spec.add_var(format!("z{i}"), 0.0, 1.0, true, 1.0)?;
    }
    add_basic_rows(g, &mut spec)?;
    for cut in &loop_report.cuts {
        spec.add_constraint(cut.terms(), Relation::Le, cut.rhs)?;
    }
    let opts = MipOptions {
        incumbent: Some(witness.set().to_f64()),
        known_bound: Some(bound as f64),
        ..MipOptions::default()
    };
    let sol = mp::solve_mip_with(&spec, &opts)?;
    let bits = sol.primal.iter().map(|&v| v > 0.5).collect();
    let witness = TotalMatching::new(g, ElementSet::from_bits(g, bits)?)?;
    Ok(TotalMatchingNumber {
        nu_t: witness.len(),
        nu,
        alpha,
        witness,
    })
}

/// The stable set plus a maximum matching of the remaining graph.
fn stable_plus_matching(g: &Graph, stable: &[usize]) -> TotalMatching {
    let mut in_s = vec![false; g.n()];
    for &v in stable {
        in_s[v] = true;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !in_s[v]).collect();
    let sub = g.induced_subgraph(&rest);
    let mut set = ElementSet::empty(g);
    for &v in stable {
        set.insert_index(v);
    }
    for e in maximum_matching(&sub) {
        let (a, b) = sub.edge(e);
        let id = g.edge_id(rest[a], rest[b]).expect("induced edge");
        set.insert_index(g.n() + id);
    }
    TotalMatching::new(g, set).expect("stable set plus a matching of the rest")
}

#[cfg(test)]
mod tests;
