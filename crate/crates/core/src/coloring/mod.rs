//! Total coloring bounds: the assignment model, the set-covering master
//! solved by column generation, and coloring heuristics.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::float::FloatCore;

use crate::graph::{ElementSet, Graph};
use crate::matching::{
    all_total_matchings, enumerate_maximal_total_matchings, extend_to_maximal, TotalMatching,
    MAXIMAL_ENUM_CAP,
};
use crate::mp::{self, LpSession, MipOptions, ModelSpec, MpError, Relation, Sense, Status};
use crate::{Error, Result};

mod pricing;
mod tabu;

pub use tabu::tabu_total_coloring;

/// Default step budget of the coloring tabu search.
pub const TABU_STEPS: usize = 20_000;
use pricing::Pricer;

/// A color per element in layout order; colors are `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalColoring {
    colors: Vec<usize>,
    num_colors: usize,
}

impl TotalColoring {
    /// Checks that every element of `g` gets a color and adjacent elements differ.
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != g.num_elements() {
            return Err(Error::SizeMismatch {
                expected: g.num_elements(),
                got: colors.len(),
            });
        }
        let c = TotalColoring {
            num_colors: colors.iter().map(|&c| c + 1).max().unwrap_or(0),
            colors,
        };
        if let Some((a, b)) = c.conflict(g) {
            return Err(Error::InvalidParameter(format!(
                "elements {} and {} are adjacent and share color {}",
                g.element_at(a),
                g.element_at(b),
                c.colors[a]
            )));
        }
        Ok(c)
    }

    fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        (0..g.num_elements()).find_map(|a| {
            g.element_neighbors(a)
                .into_iter()
                .find(|&b| b > a && self.colors[a] == self.colors[b])
                .map(|b| (a, b))
        })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut used = vec![false; self.num_colors];
        for &c in &self.colors {
            used[c] = true;
        }
        used.iter().filter(|&&u| u).count()
    }

    /// Color classes as total matchings, in color order; unused colors are skipped.
    pub fn classes(&self, g: &Graph) -> Vec<TotalMatching> {
        (0..self.num_colors)
            .filter_map(|k| {
                let bits = self.colors.iter().map(|&c| c == k).collect();
                let set = ElementSet::from_bits(g, bits).expect("layout length");
                (set.count() > 0).then(|| TotalMatching::new_unchecked(set))
            })
            .collect()
    }
}

/// Sequential first-fit over edges by id, then vertices by id.
/// Uses at most `2 * Delta + 1` colors.
pub fn greedy_total_coloring(g: &Graph) -> TotalColoring {
    let k = g.num_elements();
    let mut colors = vec![usize::MAX; k];
    for i in (g.n()..k).chain(0..g.n()) {
        let taken: Vec<usize> = g
            .element_neighbors(i)
            .into_iter()
            .map(|j| colors[j])
            .filter(|&c| c != usize::MAX)
            .collect();
        colors[i] = (0..).find(|c| !taken.contains(c)).expect("unbounded range");
    }
    TotalColoring::new(g, colors).expect("first-fit is proper")
}

/// Number of colors of the assignment model: `Delta + 2`.
pub fn default_color_count(g: &Graph) -> usize {
    g.max_degree() + 2
}

/// The assignment model over `k` colors: `x_{vk}`, then `y_{ek}`, then `z_k`
/// (layout-major, color-minor), minimizing the number of used colors.
pub fn assignment_model(g: &Graph, k: usize) -> Result<ModelSpec> {
    if k < g.max_degree() + 1 {
        return Err(Error::InvalidParameter(format!(
            "{k} colors cannot color a graph of maximum degree {}",
            g.max_degree()
        )));
    }
    let n = g.n();
    let elems = g.num_elements();
    let mut spec = ModelSpec::new(Sense::Min);
    for i in 0..elems {
        for c in 0..k {
            let name = if i < n {
                format!("x{i}_{c}")
            } else {
                format!("y{}_{c}", i - n)
            };
            spec.add_binary(name, 0.0);
        }
    }
    let var = |i: usize, c: usize| i * k + c;
    let z = |c: usize| elems * k + c;
    for c in 0..k {
        spec.add_binary(format!("z{c}"), 1.0);
    }
    for i in 0..elems {
        spec.add_constraint((0..k).map(|c| (var(i, c), 1.0)), Relation::Eq, 1.0)?;
    }
    for c in 0..k {
        for v in 0..n {
            let row = [(var(v, c), 1.0), (z(c), -1.0)]
                .into_iter()
                .chain(g.incident(v).iter().map(|&e| (var(n + e, c), 1.0)));
            spec.add_constraint(row, Relation::Le, 0.0)?;
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let row = [
                (var(u, c), 1.0),
                (var(v, c), 1.0),
                (var(n + e, c), 1.0),
                (z(c), -1.0),
            ];
            spec.add_constraint(row, Relation::Le, 0.0)?;
        }
    }
    Ok(spec)
}

/// Optimum of the assignment model's LP relaxation.
pub fn assignment_lp(g: &Graph, k: usize) -> Result<f64> {
    let sol = mp::solve_lp(&assignment_model(g, k)?)?;
    optimal(&sol, "assignment relaxation")?;
    Ok(sol.objective)
}

fn optimal(sol: &mp::Solution, what: &str) -> Result<()> {
    if sol.status == Status::Optimal {
        Ok(())
    } else {
        Err(Error::Solver(MpError::Numerical(format!(
            "{what} reported {:?}",
            sol.status
        ))))
    }
}

/// Starting information for [`assignment_mip_with`].
#[derive(Debug, Clone, Default)]
pub struct AssignmentHints {
    /// A proven lower bound on the total chromatic number.
    pub lower_bound: Option<usize>,
    /// A proper total coloring; used when it fits in `k` colors.
    pub incumbent: Option<TotalColoring>,
}

/// Total chromatic number from the assignment model, seeded with the
/// column-generation bound (rounded up) and the coloring rounded from the
/// final columns. `None` if `k` colors do not suffice.
pub fn assignment_mip(g: &Graph, k: usize) -> Result<Option<(usize, TotalColoring)>> {
    let cg = covering_colgen(g)?;
    let lower = (cg.value - 1e-6).ceil() as usize;
    let mut incumbent = round_to_coloring(g, &cg.columns)?;
    if incumbent.num_colors() > lower {
        if let Some(c) = tabu_total_coloring(g, lower, TABU_STEPS, 0) {
            incumbent = c;
        }
    }
    let hints = AssignmentHints {
        lower_bound: Some(lower),
        incumbent: Some(incumbent),
    };
    assignment_mip_with(g, k, &hints)
}

pub fn assignment_mip_with(
    g: &Graph,
    k: usize,
    hints: &AssignmentHints,
) -> Result<Option<(usize, TotalColoring)>> {
    let spec = assignment_model(g, k)?;
    let elems = g.num_elements();
    let mut opts = MipOptions::default();
    if let Some(c) = hints.incumbent.as_ref().filter(|c| c.num_colors() <= k) {
        let mut x = vec![0.0; spec.num_vars()];
        // compact the colors to 0..used
        let mut map = vec![usize::MAX; c.colors().iter().max().map_or(0, |m| m + 1)];
        let mut next = 0;
        for (i, &col) in c.colors().iter().enumerate() {
            if map[col] == usize::MAX {
                map[col] = next;
                next += 1;
            }
            x[i * k + map[col]] = 1.0;
            x[elems * k + map[col]] = 1.0;
        }
        opts.incumbent = Some(x);
    }
    opts.known_bound = hints.lower_bound.map(|b| b as f64);
    let sol = mp::solve_mip_with(&spec, &opts)?;
    if sol.status == Status::Infeasible {
        return Ok(None);
    }
    optimal(&sol, "assignment model")?;
    let colors: Vec<usize> = (0..elems)
        .map(|i| {
            (0..k)
                .find(|&c| sol.primal[i * k + c] > 0.5)
                .expect("assigned")
        })
        .collect();
    let coloring = TotalColoring::new(g, colors)?;
    Ok(Some((sol.objective.round() as usize, coloring)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Every element in at least one chosen matching.
    Covering,
    /// Every element in exactly one chosen matching.
    Partitioning,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColgenOptions {
    pub max_iterations: usize,
    /// A reduced-cost improvement must exceed this.
    pub eps: f64,
    /// Stop as soon as the master value reaches `Delta + 1`, which bounds
    /// the covering LP from below.
    pub stop_at_degree_bound: bool,
    /// Steps of a tabu search for a `(Delta + 1)`-coloring whose classes
    /// join the initial columns; 0 disables it.
    pub tabu_steps: usize,
}

impl Default for ColgenOptions {
    fn default() -> Self {
        ColgenOptions {
            max_iterations: 10_000,
            eps: 1e-6,
            stop_at_degree_bound: true,
            tabu_steps: TABU_STEPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColgenReport {
    /// Covering LP value.
    pub value: f64,
    /// Pricing rounds, counting the final one that found no column.
    pub iterations: usize,
    pub columns: Vec<TotalMatching>,
    /// Master solution, aligned with `columns`.
    pub lambda: Vec<f64>,
    /// Final duals in layout order.
    pub duals: Vec<f64>,
    /// Pricing kept returning an existing column.
    pub stalled: bool,
}

/// Covering LP value by column generation with default options.
pub fn covering_colgen(g: &Graph) -> Result<ColgenReport> {
    covering_colgen_with(g, &ColgenOptions::default())
}

/// Column generation over maximal total matchings, started from the classes
/// of [`greedy_total_coloring`] and priced by the maximum weighted total
/// matching with the master duals as weights.
pub fn covering_colgen_with(g: &Graph, opts: &ColgenOptions) -> Result<ColgenReport> {
    let elems = g.num_elements();
    let mut columns: Vec<TotalMatching> = greedy_total_coloring(g)
        .classes(g)
        .iter()
        .map(|t| extend_to_maximal(g, t))
        .collect();
    if let Some(c) = tabu_total_coloring(g, g.max_degree() + 1, opts.tabu_steps, 0) {
        columns.extend(c.classes(g).iter().map(|t| extend_to_maximal(g, t)));
    }
    columns.sort();
    columns.dedup();
    let mut spec = ModelSpec::new(Sense::Min);
    for t in 0..columns.len() {
        spec.add_continuous(format!("l{t}"), 0.0, f64::INFINITY, 1.0)?;
    }
    for i in 0..elems {
        let row = (0..columns.len())
            .filter(|&t| columns[t].set().contains_index(i))
            .map(|t| (t, 1.0));
        spec.add_constraint(row, Relation::Ge, 1.0)?;
    }
    let mut lp = LpSession::new(&spec)?;
    let pricer = Pricer::new(g);
    let degree_bound = (g.max_degree() + 1) as f64;
    let mut stalled = false;
    let mut iterations = 0;
    loop {
        if iterations >= opts.max_iterations {
            let bound = lp.objective();
            return Err(Error::IterationLimit { iterations, bound });
        }
        iterations += 1;
        if lp.solve()? != Status::Optimal {
            return Err(Error::Solver(MpError::Numerical(
                "covering master not optimal".into(),
            )));
        }
        let value = lp.objective();
        let duals: Vec<f64> = lp.duals().iter().map(|&y| y.max(0.0)).collect();
        if elems == 0 || (opts.stop_at_degree_bound && value <= degree_bound + 1e-9) {
            return Ok(finish(&lp, columns, value, iterations, duals, stalled));
        }
        let mut fresh: Vec<TotalMatching> = pricer
            .heuristic(&duals, 1.0 + opts.eps)
            .into_iter()
            .filter(|t| !columns.contains(t))
            .collect();
        if fresh.is_empty() {
            let (priced, column) = pricer.exact(&duals)?;
            if priced <= 1.0 + opts.eps {
                return Ok(finish(&lp, columns, value, iterations, duals, stalled));
            }
            let column = if columns.contains(&column) {
                // degenerate duals: perturb once, then give up
                let nudged: Vec<f64> = duals.iter().map(|&y| y + 1e-9).collect();
                let (p2, c2) = pricer.exact(&nudged)?;
                if p2 <= 1.0 + opts.eps || columns.contains(&c2) {
                    stalled = true;
                    return Ok(finish(&lp, columns, value, iterations, duals, stalled));
                }
                c2
            } else {
                column
            };
            fresh.push(column);
        }
        for column in fresh {
            let entries: Vec<(usize, f64)> = column.set().indices().map(|i| (i, 1.0)).collect();
            lp.add_variable(0.0, f64::INFINITY, 1.0, &entries)?;
            columns.push(column);
        }
    }
}

fn finish(
    lp: &LpSession,
    columns: Vec<TotalMatching>,
    value: f64,
    iterations: usize,
    duals: Vec<f64>,
    stalled: bool,
) -> ColgenReport {
    ColgenReport {
        value,
        iterations,
        lambda: lp.primal(),
        columns,
        duals,
        stalled,
    }
}

/// Covering LP over every maximal total matching, or partitioning LP over
/// every non-empty total matching.
///
/// Partitioning needs the non-maximal columns: an isolated vertex lies in
/// every maximal total matching, so exact cover by maximal ones can be
/// infeasible. Both LPs have the same optimum.
pub fn covering_exact_small(g: &Graph, mode: CoverMode) -> Result<f64> {
    if g.num_elements() > MAXIMAL_ENUM_CAP {
        return Err(Error::SizeLimit {
            what: "full covering LP",
            cap: MAXIMAL_ENUM_CAP,
            size: g.num_elements(),
        });
    }
    let columns = match mode {
        CoverMode::Covering => enumerate_maximal_total_matchings(g)?,
        CoverMode::Partitioning => {
            let mut all = all_total_matchings(g)?;
            all.retain(|t| !t.is_empty());
            all
        }
    };
    let sol = mp::solve_lp(&cover_model(g, &columns, mode, false)?)?;
    optimal(&sol, "covering LP")?;
    Ok(sol.objective)
}

fn cover_model(
    g: &Graph,
    columns: &[TotalMatching],
    mode: CoverMode,
    integer: bool,
) -> Result<ModelSpec> {
    let mut spec = ModelSpec::new(Sense::Min);
    for t in 0..columns.len() {
        spec.add_var(
            format!("l{t}"),
            0.0,
            if integer { 1.0 } else { f64::INFINITY },
            integer,
            1.0,
        )?;
    }
    let rel = match mode {
        CoverMode::Covering => Relation::Ge,
        CoverMode::Partitioning => Relation::Eq,
    };
    for i in 0..g.num_elements() {
        let row = (0..columns.len())
            .filter(|&t| columns[t].set().contains_index(i))
            .map(|t| (t, 1.0));
        spec.add_constraint(row, rel, 1.0)?;
    }
    Ok(spec)
}

/// Proper total coloring from the covering integer program restricted to
/// `columns`; an element covered several times keeps its first chosen column.
pub fn round_to_coloring(g: &Graph, columns: &[TotalMatching]) -> Result<TotalColoring> {
    let elems = g.num_elements();
    let covered = (0..elems).all(|i| columns.iter().any(|t| t.set().contains_index(i)));
    if !covered {
        return Err(Error::InvalidParameter(
            "columns do not cover every element".into(),
        ));
    }
    let spec = cover_model(g, columns, CoverMode::Covering, true)?;
    let sol = mp::solve_mip(&spec)?;
    optimal(&sol, "restricted covering program")?;
    let chosen: Vec<usize> = (0..columns.len())
        .filter(|&t| sol.primal[t] > 0.5)
        .collect();
    let mut colors = vec![usize::MAX; elems];
    for (color, &t) in chosen.iter().enumerate() {
        for i in columns[t].set().indices() {
            if colors[i] == usize::MAX {
                colors[i] = color;
            }
        }
    }
    TotalColoring::new(g, colors)
}
