use alloc::format;
use alloc::vec::Vec;

use super::{
    better, check_clique, clique_edges, CliqueBackend, CutInequality, Family, FractionalPoint,
};
use crate::graph::{maximal_cliques, Graph};
use crate::mp::{self, ModelSpec, Relation, Sense};
use crate::{Error, Result, VIOLATION_EPS};

/// Largest maximal clique whose even subsets are enumerated; bigger cliques
/// are handed to the integer program.
const SUBSET_CAP: usize = 18;

/// Even-clique inequality: vertices and internal edges of a clique of even
/// order `h` sum to at most `h / 2`.
pub fn even_clique_cut(g: &Graph, clique: &[usize]) -> Result<CutInequality> {
    let vs = check_clique(g, clique)?;
    if vs.is_empty() || vs.len() % 2 == 1 {
        return Err(Error::InvalidCut(format!(
            "clique of order {} is not even",
            vs.len()
        )));
    }
    let edges = clique_edges(g, &vs);
    let rhs = (vs.len() / 2) as f64;
    Ok(CutInequality::unit(g, Family::EvenClique, vs, edges, rhs))
}

/// Odd-clique inequality: vertices and internal edges of a clique of odd
/// order `h` sum to at most `(h + 1) / 2`. Valid, never a facet for `h >= 3`.
pub fn odd_clique_cut(g: &Graph, clique: &[usize]) -> Result<CutInequality> {
    let vs = check_clique(g, clique)?;
    if vs.len() % 2 == 0 {
        return Err(Error::InvalidCut(format!(
            "clique of order {} is not odd",
            vs.len()
        )));
    }
    let edges = clique_edges(g, &vs);
    let rhs = vs.len().div_ceil(2) as f64;
    Ok(CutInequality::unit(g, Family::OddClique, vs, edges, rhs))
}

fn clique_value(g: &Graph, p: &FractionalPoint, vs: &[usize]) -> f64 {
    let mut s: f64 = vs.iter().map(|&v| p.vertex(v)).sum();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            s += p.edge(g, g.edge_id(u, v).expect("clique"));
        }
    }
    s - (vs.len() / 2) as f64
}

/// Most violated even-clique inequality.
pub fn separate_even_clique(g: &Graph, p: &FractionalPoint) -> Result<Option<CutInequality>> {
    separate_even_clique_with(g, p, CliqueBackend::default())
}

pub fn separate_even_clique_with(
    g: &Graph,
    p: &FractionalPoint,
    backend: CliqueBackend,
) -> Result<Option<CutInequality>> {
    let mut best: Option<(f64, CutInequality)> = None;
    let cliques = maximal_cliques(g);
    let use_mip = backend == CliqueBackend::Mip || cliques.iter().any(|c| c.len() > SUBSET_CAP);
    if use_mip {
        if let Some(vs) = even_clique_mip(g, p)? {
            let cut = even_clique_cut(g, &vs)?;
            best = Some((cut.violation(p.values()), cut));
        }
    } else {
        for c in &cliques {
            let h = c.len();
            if h < 2 {
                continue;
            }
            for mask in 1u32..(1 << h) {
                if mask.count_ones() % 2 == 1 {
                    continue;
                }
                let vs: Vec<usize> = (0..h)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| c[i])
                    .collect();
                let viol = clique_value(g, p, &vs);
                if viol <= VIOLATION_EPS {
                    continue;
                }
                if let Some((bv, _)) = &best {
                    if viol < bv - 1e-9 {
                        continue;
                    }
                }
                let cut = even_clique_cut(g, &vs)?;
                best = better(best, (viol, cut));
            }
        }
    }
    Ok(best.filter(|(v, _)| *v > VIOLATION_EPS).map(|(_, c)| c))
}

/// Maximum of `sum c_v x_v + sum w_e y_e - z` over cliques with `sum x = 2z`.
fn even_clique_mip(g: &Graph, p: &FractionalPoint) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut spec = ModelSpec::new(Sense::Max);
    for v in 0..n {
        spec.add_binary(format!("x{v}"), p.vertex(v));
    }
    for e in 0..g.m() {
        spec.add_binary(format!("y{e}"), p.edge(g, e));
    }
    let z = spec.add_var("z", 0.0, f64::INFINITY, true, -1.0)?;
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                spec.add_constraint([(u, 1.0), (v, 1.0)], Relation::Le, 1.0)?;
            }
        }
    }
    spec.add_constraint(
        (0..n).map(|v| (v, 1.0)).chain([(z, -2.0)]),
        Relation::Eq,
        0.0,
    )?;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let y = n + e;
        spec.add_constraint([(y, 1.0), (u, -1.0)], Relation::Le, 0.0)?;
        spec.add_constraint([(y, 1.0), (v, -1.0)], Relation::Le, 0.0)?;
        spec.add_constraint([(u, 1.0), (v, 1.0), (y, -1.0)], Relation::Le, 1.0)?;
    }
    let sol = mp::solve_mip(&spec)?;
    if sol.objective <= VIOLATION_EPS {
        return Ok(None);
    }
    Ok(Some((0..n).filter(|&v| sol.primal[v] > 0.5).collect()))
}
