use alloc::format;
use alloc::vec::Vec;

use super::{check_clique, CliqueBackend, CutInequality, Family, FractionalPoint};
use crate::graph::{maximal_cliques, Graph};
use crate::mp::{self, ModelSpec, Relation, Sense};
use crate::{Error, Result, VIOLATION_EPS};

/// Vertex-clique inequality `sum_{v in K} x_v <= 1`. The clique must be
/// maximal for the inequality to define a facet, but any clique is accepted.
pub fn vertex_clique_cut(g: &Graph, clique: &[usize]) -> Result<CutInequality> {
    let vs = check_clique(g, clique)?;
    if vs.is_empty() {
        return Err(Error::InvalidCut("empty clique".into()));
    }
    Ok(CutInequality::unit(
        g,
        Family::VertexClique,
        vs,
        Vec::new(),
        1.0,
    ))
}

/// Extends a clique to a maximal one, adding the lowest-id candidate first.
fn maximalize(g: &Graph, clique: &[usize]) -> Vec<usize> {
    let mut k = clique.to_vec();
    for v in 0..g.n() {
        if !k.contains(&v) && k.iter().all(|&u| g.has_edge(u, v)) {
            k.push(v);
        }
    }
    k.sort_unstable();
    k
}

/// Most violated vertex-clique inequality, posted on the greedily
/// maximalized clique.
pub fn separate_vertex_clique(g: &Graph, p: &FractionalPoint) -> Result<Option<CutInequality>> {
    separate_vertex_clique_with(g, p, CliqueBackend::default())
}

pub fn separate_vertex_clique_with(
    g: &Graph,
    p: &FractionalPoint,
    backend: CliqueBackend,
) -> Result<Option<CutInequality>> {
    let weight = |c: &[usize]| c.iter().map(|&v| p.vertex(v)).sum::<f64>();
    let best = match backend {
        CliqueBackend::Enumeration => {
            // a maximum-weight clique lies inside a maximal clique of the
            // subgraph induced by positive-weight vertices
            let positive: Vec<usize> = (0..g.n()).filter(|&v| p.vertex(v) > 1e-12).collect();
            let sub = g.induced_subgraph(&positive);
            let mut best: Option<(f64, Vec<usize>)> = None;
            for c in maximal_cliques(&sub) {
                let c: Vec<usize> = c.into_iter().map(|i| positive[i]).collect();
                let w = weight(&c);
                let replace = match &best {
                    None => true,
                    Some((bw, bc)) => {
                        w > bw + 1e-9 || ((w - bw).abs() <= 1e-9 && (c.len(), &c) < (bc.len(), bc))
                    }
                };
                if replace {
                    best = Some((w, c));
                }
            }
            best
        }
        CliqueBackend::Mip => {
            let mut spec = ModelSpec::new(Sense::Max);
            for v in 0..g.n() {
                spec.add_binary(format!("x{v}"), p.vertex(v));
            }
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if !g.has_edge(u, v) {
                        spec.add_constraint([(u, 1.0), (v, 1.0)], Relation::Le, 1.0)?;
                    }
                }
            }
            let sol = mp::solve_mip(&spec)?;
            let c: Vec<usize> = (0..g.n()).filter(|&v| sol.primal[v] > 0.5).collect();
            Some((weight(&c), c))
        }
    };
    let Some((w, clique)) = best else {
        return Ok(None);
    };
    if w <= 1.0 + VIOLATION_EPS {
        return Ok(None);
    }
    Ok(Some(vertex_clique_cut(g, &maximalize(g, &clique))?))
}
