//! Valid inequalities for the total matching polytope and their separation.
//!
//! Points and coefficient vectors use the element layout `[vertices | edges]`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::Graph;
use crate::{Error, Result, VIOLATION_EPS};

mod clique;
mod cycle;
mod even_clique;

pub use clique::{separate_vertex_clique, separate_vertex_clique_with, vertex_clique_cut};
pub use cycle::{
    cycle_cut, separate_cycle, separate_cycle_exact, separate_cycle_mip, separate_cycle_sp,
    CycleBackend,
};
pub use even_clique::{
    even_clique_cut, odd_clique_cut, separate_even_clique, separate_even_clique_with,
};

/// How clique-type separation problems are solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CliqueBackend {
    /// Enumerate maximal cliques (and their even subsets).
    #[default]
    Enumeration,
    /// Solve the separation integer program.
    Mip,
}

/// Inequality families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `x_v + sum_{e in d(v)} y_e <= 1`.
    VertexStar,
    /// `x_u + x_v + y_e <= 1`.
    EdgeTriangle,
    /// `-z_i <= 0`.
    NonNegativity,
    VertexClique,
    Cycle,
    EvenClique,
    OddClique,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::VertexStar => "vertex-star",
            Family::EdgeTriangle => "edge-triangle",
            Family::NonNegativity => "nonnegativity",
            Family::VertexClique => "vertex-clique",
            Family::Cycle => "cycle-2k3",
            Family::EvenClique => "even-clique",
            Family::OddClique => "odd-clique",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            Family::VertexStar,
            Family::EdgeTriangle,
            Family::NonNegativity,
            Family::VertexClique,
            Family::Cycle,
            Family::EvenClique,
            Family::OddClique,
        ];
        all.into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidCut(format!("unknown family `{s}`")))
    }
}

/// A linear inequality `coeffs . z <= rhs` over the elements of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CutInequality {
    pub family: Family,
    pub coeffs: Vec<f64>,
    pub rhs: f64,
    /// Defining vertices (cyclic order for cycles, ascending otherwise).
    pub vertices: Vec<usize>,
    /// Defining edges, ascending.
    pub edges: Vec<usize>,
}

impl CutInequality {
    /// Builds a 0/1 inequality on the given support.
    pub(crate) fn unit(
        g: &Graph,
        family: Family,
        vertices: Vec<usize>,
        edges: Vec<usize>,
        rhs: f64,
    ) -> Self {
        let mut coeffs = vec![0.0; g.num_elements()];
        for &v in &vertices {
            coeffs[v] = 1.0;
        }
        for &e in &edges {
            coeffs[g.n() + e] = 1.0;
        }
        let mut edges = edges;
        edges.sort_unstable();
        CutInequality {
            family,
            coeffs,
            rhs,
            vertices,
            edges,
        }
    }

    pub fn lhs(&self, point: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(c, _)| **c != 0.0)
            .map(|(c, p)| c * p)
            .sum()
    }

    /// `lhs - rhs`; positive when the point is cut off.
    pub fn violation(&self, point: &[f64]) -> f64 {
        self.lhs(point) - self.rhs
    }

    /// Nonzero coefficients as `(layout index, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, &c)| (i, c))
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    /// Ordering key for ties: smaller support, then lexicographic support.
    pub(crate) fn tie_key(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        (self.support_size(), v, self.edges.clone())
    }
}

impl fmt::Display for CutInequality {
    /// `family rhs [v ids | e ids]`, the cut text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [", self.family, self.rhs)?;
        write_ids(f, &self.vertices)?;
        f.write_str(" | ")?;
        write_ids(f, &self.edges)?;
        f.write_str("]")
    }
}

fn write_ids(f: &mut fmt::Formatter<'_>, ids: &[usize]) -> fmt::Result {
    for (i, id) in ids.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{id}")?;
    }
    Ok(())
}

/// Picks the more violated of two cuts, breaking ties by [`CutInequality::tie_key`].
pub(crate) fn better(
    a: Option<(f64, CutInequality)>,
    b: (f64, CutInequality),
) -> Option<(f64, CutInequality)> {
    match a {
        None => Some(b),
        Some(a) => {
            if b.0 > a.0 + 1e-9 || ((b.0 - a.0).abs() <= 1e-9 && b.1.tie_key() < a.1.tie_key()) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// A point over the elements with every value in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPoint {
    values: Vec<f64>,
}

impl FractionalPoint {
    /// Validates a layout-ordered point; values within 1e-6 of `[0, 1]` are clamped.
    pub fn new(g: &Graph, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.num_elements() {
            return Err(Error::SizeMismatch {
                expected: g.num_elements(),
                got: values.len(),
            });
        }
        let mut values = values;
        for (i, v) in values.iter_mut().enumerate() {
            if !v.is_finite() || *v < -1e-6 || *v > 1.0 + 1e-6 {
                return Err(Error::InvalidPoint(format!(
                    "value {v} at element {} outside [0, 1]",
                    g.element_at(i)
                )));
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(FractionalPoint { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vertex(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn edge(&self, g: &Graph, e: usize) -> f64 {
        self.values[g.n() + e]
    }
}

/// Whether the constraint `cut` is satisfied by every total matching of a small graph.
pub fn is_valid_by_enumeration(g: &Graph, cut: &CutInequality) -> Result<bool> {
    let all = crate::matching::all_total_matchings(g)?;
    Ok(all
        .iter()
        .all(|t| cut.lhs(&t.set().to_f64()) <= cut.rhs + VIOLATION_EPS))
}

pub(crate) fn check_clique(g: &Graph, vertices: &[usize]) -> Result<Vec<usize>> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != vertices.len() {
        return Err(Error::InvalidCut("repeated vertex".to_string()));
    }
    for &v in &vs {
        g.check_element(crate::Element::Vertex(v))?;
    }
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidCut(format!("{{{u},{v}}} is not an edge")));
            }
        }
    }
    Ok(vs)
}

pub(crate) fn clique_edges(g: &Graph, vs: &[usize]) -> Vec<usize> {
    let mut edges = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            edges.push(g.edge_id(u, v).expect("clique"));
        }
    }
    edges.sort_unstable();
    edges
}

/// Basic inequality `x_v + sum_{e in d(v)} y_e <= 1`.
pub fn vertex_star_cut(g: &Graph, v: usize) -> Result<CutInequality> {
    g.check_element(crate::Element::Vertex(v))?;
    Ok(CutInequality::unit(
        g,
        Family::VertexStar,
        vec![v],
        g.incident(v).to_vec(),
        1.0,
    ))
}

/// Basic inequality `x_u + x_v + y_e <= 1`.
pub fn edge_triangle_cut(g: &Graph, e: usize) -> Result<CutInequality> {
    g.check_element(crate::Element::Edge(e))?;
    let (u, v) = g.edge(e);
    Ok(CutInequality::unit(
        g,
        Family::EdgeTriangle,
        vec![u, v],
        vec![e],
        1.0,
    ))
}

/// Basic inequality `-z_i <= 0` for the element at layout index `index`.
pub fn nonnegativity_cut(g: &Graph, index: usize) -> Result<CutInequality> {
    if index >= g.num_elements() {
        return Err(Error::InvalidCut(format!(
            "element index {index} out of range"
        )));
    }
    let mut coeffs = vec![0.0; g.num_elements()];
    coeffs[index] = -1.0;
    let (vertices, edges) = if index < g.n() {
        (vec![index], vec![])
    } else {
        (vec![], vec![index - g.n()])
    };
    Ok(CutInequality {
        family: Family::NonNegativity,
        coeffs,
        rhs: 0.0,
        vertices,
        edges,
    })
}
