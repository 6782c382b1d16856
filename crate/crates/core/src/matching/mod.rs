//! Total matchings: recognition, the maximum weighted total matching model,
//! exhaustive oracles, perfect total matchings and greedy maximalization.
//!
//! Models over elements use one variable per element in layout order, so a
//! primal vector is directly a point over `[vertices | edges]`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Element, ElementSet, Graph};
use crate::mp::{self, MipOptions, ModelSpec, Relation, Sense, Status};
use crate::{Error, Result};

mod blossom;
mod enumerate;

pub use blossom::maximum_matching;
pub use enumerate::{all_total_matchings, enumerate_maximal_total_matchings, mwtmp_bruteforce};

/// Element-count cap of [`mwtmp_bruteforce`] and [`all_total_matchings`].
pub const BRUTEFORCE_CAP: usize = 24;
/// Element-count cap of [`enumerate_maximal_total_matchings`].
pub const MAXIMAL_ENUM_CAP: usize = 20;

/// A set of pairwise independent elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalMatching {
    set: ElementSet,
}

impl TotalMatching {
    /// Checks independence of `set`.
    pub fn new(g: &Graph, set: ElementSet) -> Result<Self> {
        if is_total_matching(g, &set)? {
            Ok(TotalMatching { set })
        } else {
            Err(Error::InvalidParameter(format!(
                "{set:?} is not a total matching"
            )))
        }
    }

    pub(crate) fn new_unchecked(set: ElementSet) -> Self {
        TotalMatching { set }
    }

    pub fn empty(g: &Graph) -> Self {
        TotalMatching {
            set: ElementSet::empty(g),
        }
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn into_set(self) -> ElementSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.set.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.set.elements()
    }

    /// Vertices in the matching or incident to one of its edges.
    pub fn covered_vertices(&self, g: &Graph) -> Vec<bool> {
        let mut covered = vec![false; g.n()];
        for v in self.set.vertices() {
            covered[v] = true;
        }
        for e in self.set.edges() {
            let (u, v) = g.edge(e);
            covered[u] = true;
            covered[v] = true;
        }
        covered
    }

    pub fn weight(&self, w: &WeightVector) -> f64 {
        self.set.weight(&w.layout())
    }
}

/// Vertex weights `c` and edge weights `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub vertex: Vec<f64>,
    pub edge: Vec<f64>,
}

impl WeightVector {
    pub fn new(g: &Graph, vertex: Vec<f64>, edge: Vec<f64>) -> Result<Self> {
        if vertex.len() != g.n() {
            return Err(Error::SizeMismatch {
                expected: g.n(),
                got: vertex.len(),
            });
        }
        if edge.len() != g.m() {
            return Err(Error::SizeMismatch {
                expected: g.m(),
                got: edge.len(),
            });
        }
        if vertex.iter().chain(&edge).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("weights must be finite".into()));
        }
        Ok(WeightVector { vertex, edge })
    }

    pub fn unit(g: &Graph) -> Self {
        WeightVector {
            vertex: vec![1.0; g.n()],
            edge: vec![1.0; g.m()],
        }
    }

    /// Splits a layout-ordered vector.
    pub fn from_layout(g: &Graph, values: &[f64]) -> Result<Self> {
        if values.len() != g.num_elements() {
            return Err(Error::SizeMismatch {
                expected: g.num_elements(),
                got: values.len(),
            });
        }
        Self::new(g, values[..g.n()].to_vec(), values[g.n()..].to_vec())
    }

    /// Weights in layout order.
    pub fn layout(&self) -> Vec<f64> {
        let mut v = self.vertex.clone();
        v.extend_from_slice(&self.edge);
        v
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.vertex.len() != g.n() || self.edge.len() != g.m() {
            return Err(Error::SizeMismatch {
                expected: g.num_elements(),
                got: self.vertex.len() + self.edge.len(),
            });
        }
        Ok(())
    }
}

/// Whether the members of `s` are pairwise independent.
pub fn is_total_matching(g: &Graph, s: &ElementSet) -> Result<bool> {
    if s.len() != g.num_elements() {
        return Err(Error::SizeMismatch {
            expected: g.num_elements(),
            got: s.len(),
        });
    }
    let mut covered = vec![false; g.n()];
    for v in s.vertices() {
        covered[v] = true;
    }
    for v in s.vertices() {
        if g.neighbors(v).iter().any(|&u| covered[u]) {
            return Ok(false);
        }
    }
    for e in s.edges() {
        let (u, v) = g.edge(e);
        if covered[u] || covered[v] {
            return Ok(false);
        }
        covered[u] = true;
        covered[v] = true;
    }
    Ok(true)
}

/// The maximum weighted total matching integer program: star rows
/// `x_v + sum_{e in d(v)} y_e <= 1` followed by edge rows
/// `x_u + x_v + y_e <= 1`, all variables binary.
///
/// Elements with nonpositive weight are fixed to zero; some optimum never
/// uses them since every row is a packing row.
pub fn mwtmp_model(g: &Graph, w: &WeightVector) -> Result<ModelSpec> {
    w.check(g)?;
    let mut spec = ModelSpec::new(Sense::Max);
    for (i, &c) in w.layout().iter().enumerate() {
        let name = match g.element_at(i) {
            Element::Vertex(v) => format!("x{v}"),
            Element::Edge(e) => format!("y{e}"),
        };
        let upper = if c > 0.0 { 1.0 } else { 0.0 };
        spec.add_var(name, 0.0, upper, true, c)?;
    }
    add_basic_rows(g, &mut spec)?;
    Ok(spec)
}

pub(crate) fn add_basic_rows(g: &Graph, spec: &mut ModelSpec) -> Result<()> {
    let n = g.n();
    for v in 0..n {
        let row = core::iter::once((v, 1.0)).chain(g.incident(v).iter().map(|&e| (n + e, 1.0)));
        spec.add_constraint(row, Relation::Le, 1.0)?;
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        spec.add_constraint([(u, 1.0), (v, 1.0), (n + e, 1.0)], Relation::Le, 1.0)?;
    }
    Ok(())
}

fn set_from_point(g: &Graph, x: &[f64]) -> ElementSet {
    let mut s = ElementSet::empty(g);
    for (i, &v) in x.iter().enumerate() {
        if v > 0.5 {
            s.insert_index(i);
        }
    }
    s
}

/// Exact maximum weighted total matching by branch-and-bound on
/// [`mwtmp_model`].
pub fn mwtmp_exact(g: &Graph, w: &WeightVector) -> Result<(f64, TotalMatching)> {
    mwtmp_exact_with(g, w, &MipOptions::default())
}

/// [`mwtmp_exact`] with solver options. A greedy incumbent is supplied when
/// the options carry none.
pub fn mwtmp_exact_with(
    g: &Graph,
    w: &WeightVector,
    opts: &MipOptions,
) -> Result<(f64, TotalMatching)> {
    let spec = mwtmp_model(g, w)?;
    let mut opts = opts.clone();
    if opts.incumbent.is_none() {
        opts.incumbent = Some(weighted_greedy(g, w).set().to_f64());
    }
    let sol = mp::solve_mip_with(&spec, &opts)?;
    if sol.status != Status::Optimal {
        return Err(Error::Solver(mp::MpError::Numerical(format!(
            "total matching model reported {:?}",
            sol.status
        ))));
    }
    let set = set_from_point(g, &sol.primal);
    let tm = TotalMatching::new_unchecked(set);
    debug_assert!(is_total_matching(g, tm.set()).unwrap_or(false));
    Ok((tm.weight(w), tm))
}

/// Greedy total matching by decreasing positive weight (ties by layout index).
pub fn weighted_greedy(g: &Graph, w: &WeightVector) -> TotalMatching {
    let weights = w.layout();
    let mut order: Vec<usize> = (0..g.num_elements())
        .filter(|&i| weights[i] > 0.0)
        .collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    greedy_from(g, ElementSet::empty(g), &order)
}

/// Optimum of the LP relaxation of [`mwtmp_model`] (bounds `[0, 1]`).
pub fn basic_lp_bound(g: &Graph, w: &WeightVector) -> Result<f64> {
    w.check(g)?;
    let mut spec = ModelSpec::new(Sense::Max);
    for (i, &c) in w.layout().iter().enumerate() {
        spec.add_var(format!("z{i}"), 0.0, 1.0, false, c)?;
    }
    add_basic_rows(g, &mut spec)?;
    let sol = mp::solve_lp(&spec)?;
    Ok(sol.objective)
}

/// Perfect total matching: a maximum matching plus the vertices it leaves
/// uncovered.
pub fn perfect_total_matching(g: &Graph) -> Result<TotalMatching> {
    let matching = maximum_matching(g);
    let mut set = ElementSet::empty(g);
    let mut covered = vec![false; g.n()];
    for &e in &matching {
        let (u, v) = g.edge(e);
        covered[u] = true;
        covered[v] = true;
        set.insert_index(g.n() + e);
    }
    for v in 0..g.n() {
        if !covered[v] {
            set.insert_index(v);
        }
    }
    Ok(TotalMatching::new_unchecked(set))
}

/// Whether `s` covers every vertex.
pub fn is_perfect(g: &Graph, t: &TotalMatching) -> bool {
    t.covered_vertices(g).iter().all(|&c| c)
}

/// Default scan order: vertices by id, then edges by id.
pub fn default_order(g: &Graph) -> Vec<usize> {
    (0..g.num_elements()).collect()
}

/// Adds elements of `order` (layout indices) to `start` whenever independence
/// allows, then completes with the default order.
fn greedy_from(g: &Graph, start: ElementSet, order: &[usize]) -> TotalMatching {
    let mut set = start;
    let mut blocked = vec![false; g.num_elements()];
    for i in set.indices().collect::<Vec<_>>() {
        blocked[i] = true;
        for j in g.element_neighbors(i) {
            blocked[j] = true;
        }
    }
    for i in order.iter().copied().chain(0..g.num_elements()) {
        if blocked[i] {
            continue;
        }
        set.insert_index(i);
        blocked[i] = true;
        for j in g.element_neighbors(i) {
            blocked[j] = true;
        }
    }
    TotalMatching::new_unchecked(set)
}

/// Extends `t` to an inclusion-maximal total matching scanning the default order.
pub fn extend_to_maximal(g: &Graph, t: &TotalMatching) -> TotalMatching {
    greedy_from(g, t.set.clone(), &[])
}

/// Greedy maximal total matching scanning `order` (layout indices; missing
/// elements are appended in default order).
pub fn greedy_maximal(g: &Graph, order: &[usize]) -> Result<TotalMatching> {
    if let Some(&bad) = order.iter().find(|&&i| i >= g.num_elements()) {
        return Err(Error::InvalidElement {
            element: g.element_at(bad),
            n: g.n(),
            m: g.m(),
        });
    }
    Ok(greedy_from(g, ElementSet::empty(g), order))
}

/// Whether no element can be added to `t`.
pub fn is_maximal(g: &Graph, t: &TotalMatching) -> bool {
    (0..g.num_elements()).all(|i| {
        t.set.contains_index(i)
            || g.element_neighbors(i)
                .iter()
                .any(|&j| t.set.contains_index(j))
    })
}
