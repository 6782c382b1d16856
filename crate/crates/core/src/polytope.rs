//! Exact checks on the total matching polytope of small graphs: dimension,
//! validity of an inequality, and facetness through the affine rank of the
//! tight vertices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::matching::{all_total_matchings, BRUTEFORCE_CAP};
use crate::separation::CutInequality;
use crate::{Error, Result};

/// Element-count cap of the enumeration.
pub const POLYTOPE_CAP: usize = BRUTEFORCE_CAP;

/// Characteristic vectors of all total matchings, the vertices of the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexList {
    dim: usize,
    vectors: Vec<Vec<bool>>,
}

impl VertexList {
    /// Ambient dimension `n + m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<bool>] {
        &self.vectors
    }
}

pub fn enumerate_total_matchings(g: &Graph) -> Result<VertexList> {
    let size = g.num_elements();
    if size > POLYTOPE_CAP {
        return Err(Error::SizeLimit {
            what: "total matching polytope",
            cap: POLYTOPE_CAP,
            size,
        });
    }
    let vectors = all_total_matchings(g)?
        .into_iter()
        .map(|t| (0..size).map(|i| t.set().contains_index(i)).collect())
        .collect();
    Ok(VertexList { dim: size, vectors })
}

/// Dimension of the convex hull of the total matchings.
pub fn polytope_dimension(g: &Graph) -> Result<usize> {
    let list = enumerate_total_matchings(g)?;
    Ok(affine_rank(list.dim, list.vectors.iter()) - 1)
}

/// Outcome of [`check_inequality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InequalityCheck {
    pub valid: bool,
    /// Vertices satisfying the inequality at equality.
    pub tight_count: usize,
    /// Maximum number of affinely independent tight vertices.
    pub face_affine_rank: usize,
    /// Valid, with `n + m` affinely independent tight vertices.
    pub is_facet: bool,
}

impl fmt::Display for InequalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "tight vertices: {}", self.tight_count)?;
        writeln!(f, "face affine rank: {}", self.face_affine_rank)?;
        write!(f, "facet: {}", self.is_facet)
    }
}

pub fn check_inequality(g: &Graph, cut: &CutInequality) -> Result<InequalityCheck> {
    let list = enumerate_total_matchings(g)?;
    if cut.coeffs.len() != list.dim {
        return Err(Error::SizeMismatch {
            expected: list.dim,
            got: cut.coeffs.len(),
        });
    }
    let lhs = |x: &[bool]| -> f64 {
        x.iter()
            .zip(&cut.coeffs)
            .filter(|(&b, _)| b)
            .map(|(_, &c)| c)
            .sum()
    };
    let mut valid = true;
    let mut tight = Vec::new();
    for x in &list.vectors {
        let d = lhs(x) - cut.rhs;
        if d > 1e-9 {
            valid = false;
        } else if d.abs() <= 1e-9 {
            tight.push(x);
        }
    }
    let face_affine_rank = if tight.is_empty() {
        0
    } else {
        affine_rank(list.dim, tight.iter().copied())
    };
    Ok(InequalityCheck {
        valid,
        tight_count: tight.len(),
        face_affine_rank,
        is_facet: valid && face_affine_rank == list.dim,
    })
}

/// Rank of the vectors `(1, x)`, by fraction-free elimination over the
/// integers; stops once the rank is full.
fn affine_rank<'a>(dim: usize, points: impl Iterator<Item = &'a Vec<bool>>) -> usize {
    let width = dim + 1;
    // echelon rows with their pivot column
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for x in points {
        let mut row = vec![0i128; width];
        row[0] = 1;
        for (j, &b) in x.iter().enumerate() {
            row[j + 1] = i128::from(b);
        }
        for (p, b) in &basis {
            let f = row[*p];
            if f == 0 {
                continue;
            }
            let piv = b[*p];
            for j in 0..width {
                row[j] = row[j] * piv - f * b[j];
            }
            normalize(&mut row);
        }
        if let Some(p) = row.iter().position(|&v| v != 0) {
            basis.push((p, row));
            if basis.len() == width {
                break;
            }
        }
    }
    basis.len()
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, &v| gcd(acc, v.abs()));
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fixed 6-vertex host graphs for facet checks of embedded structures.
pub mod hosts {
    use crate::graph::Graph;

    /// Triangles 0-1-2 and 1-2-3 closed into a ring by 3-4-5-0; both
    /// triangles are maximal cliques.
    pub fn triangle_host() -> Graph {
        Graph::new(
            6,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 0),
            ],
        )
        .expect("host")
    }

    /// Induced 4-cycle 0-1-2-3 with vertices 4 and 5 hanging off it.
    pub fn c4_host() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2)]).expect("host")
    }

    /// `K4` on 0..4 with vertex 4 on 0 and 1, and vertex 5 on 4 and 3.
    pub fn k4_host() -> Graph {
        Graph::new(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .expect("host")
    }
}

#[cfg(test)]
mod tests;
