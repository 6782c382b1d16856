//! Simple undirected graphs and their elements.
//!
//! Vertices are `0..n`, edges are `0..m` in insertion order. Every vector
//! indexed by elements uses the layout `[vertex block | edge block]`, so
//! vertex `v` sits at index `v` and edge `e` at index `n + e`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

mod cliques;
mod fixtures;
mod named;
mod random;
mod total;

pub use cliques::{maximal_cliques, maximum_clique, maximum_stable_set};
pub use named::{named_graph, NamedGraph};
pub use random::{random_cubic, random_gnp};
pub use total::{total_graph, TotalGraph};

const NO_EDGE: u32 = u32::MAX;

/// A simple undirected graph with stable vertex and edge identifiers.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    // n*n lookup, edge id or NO_EDGE
    edge_index: Vec<u32>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Pairs are normalized to `u < v`; loops,
    /// duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edge_index = vec![NO_EDGE; n * n];
        let mut list = Vec::new();
        let mut incident = vec![Vec::new(); n];
        let mut neighbors = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{a},{b}}} out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if edge_index[u * n + v] != NO_EDGE {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u},{v}}}")));
            }
            let id = list.len();
            edge_index[u * n + v] = id as u32;
            edge_index[v * n + u] = id as u32;
            list.push((u, v));
            incident[u].push(id);
            incident[v].push(id);
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            incident,
            neighbors,
            edge_index,
        })
    }

    /// Graph without edges.
    pub fn empty(n: usize) -> Self {
        Graph::new(n, core::iter::empty()).expect("edgeless graph is always valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of elements, `n + m`.
    #[inline]
    pub fn num_elements(&self) -> usize {
        self.n + self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge ids incident to `v`, in insertion order.
    #[inline]
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Neighbors of `v`, sorted ascending.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_index[u * self.n + v] != NO_EDGE
    }

    #[inline]
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n || u == v {
            return None;
        }
        match self.edge_index[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    /// Dense index of an element in the `[vertices | edges]` layout.
    #[inline]
    pub fn element_index(&self, el: Element) -> usize {
        match el {
            Element::Vertex(v) => v,
            Element::Edge(e) => self.n + e,
        }
    }

    /// Inverse of [`Graph::element_index`].
    #[inline]
    pub fn element_at(&self, index: usize) -> Element {
        if index < self.n {
            Element::Vertex(index)
        } else {
            Element::Edge(index - self.n)
        }
    }

    pub fn check_element(&self, el: Element) -> Result<()> {
        let ok = match el {
            Element::Vertex(v) => v < self.n,
            Element::Edge(e) => e < self.m(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: el,
                n: self.n,
                m: self.m(),
            })
        }
    }

    /// All elements in layout order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.num_elements()).map(move |i| self.element_at(i))
    }

    /// Adjacency of two elements, assuming both are valid.
    pub(crate) fn adjacent_unchecked(&self, a: Element, b: Element) -> bool {
        match (a, b) {
            (Element::Vertex(u), Element::Vertex(v)) => self.has_edge(u, v),
            (Element::Edge(e), Element::Edge(f)) => {
                if e == f {
                    return false;
                }
                let (a0, a1) = self.edges[e];
                let (b0, b1) = self.edges[f];
                a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1
            }
            (Element::Vertex(v), Element::Edge(e)) | (Element::Edge(e), Element::Vertex(v)) => {
                let (x, y) = self.edges[e];
                v == x || v == y
            }
        }
    }

    /// Indices (layout order) of the elements adjacent to the element at `index`.
    pub fn element_neighbors(&self, index: usize) -> Vec<usize> {
        let mut out = Vec::new();
        match self.element_at(index) {
            Element::Vertex(v) => {
                out.extend(self.neighbors[v].iter().copied());
                out.extend(self.incident[v].iter().map(|&e| self.n + e));
            }
            Element::Edge(e) => {
                let (u, v) = self.edges[e];
                out.push(u);
                out.push(v);
                for &f in self.incident[u].iter().chain(self.incident[v].iter()) {
                    if f != e {
                        out.push(self.n + f);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Subgraph induced by `vertices` (kept in the given order, relabelled 0..k).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }
}

/// A vertex or an edge of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
}

impl core::fmt::Display for Element {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Edge(e) => write!(f, "e{e}"),
        }
    }
}

/// Whether two elements are adjacent: joined vertices, edges sharing an
/// endpoint, or an edge and one of its endpoints. An element is never
/// adjacent to itself.
pub fn elements_adjacent(g: &Graph, a: Element, b: Element) -> Result<bool> {
    g.check_element(a)?;
    g.check_element(b)?;
    Ok(a != b && g.adjacent_unchecked(a, b))
}

/// A dense 0/1 vector over the elements of a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet {
    n: usize,
    bits: Vec<bool>,
}

impl core::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("{")?;
        for (i, idx) in self.indices().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if idx < self.n {
                write!(f, "v{idx}")?;
            } else {
                write!(f, "e{}", idx - self.n)?;
            }
        }
        f.write_str("}")
    }
}

impl ElementSet {
    pub fn empty(g: &Graph) -> Self {
        ElementSet {
            n: g.n(),
            bits: vec![false; g.num_elements()],
        }
    }

    pub fn from_elements<I>(g: &Graph, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut s = Self::empty(g);
        for el in elements {
            g.check_element(el)?;
            s.bits[g.element_index(el)] = true;
        }
        Ok(s)
    }

    /// Builds a set from a 0/1 vector of length `n + m`.
    pub fn from_bits(g: &Graph, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != g.num_elements() {
            return Err(Error::SizeMismatch {
                expected: g.num_elements(),
                got: bits.len(),
            });
        }
        Ok(ElementSet { n: g.n(), bits })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn contains_index(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn contains(&self, el: Element) -> bool {
        match el {
            Element::Vertex(v) => v < self.n && self.bits[v],
            Element::Edge(e) => self.n + e < self.bits.len() && self.bits[self.n + e],
        }
    }

    #[inline]
    pub fn insert_index(&mut self, index: usize) {
        self.bits[index] = true;
    }

    #[inline]
    pub fn remove_index(&mut self, index: usize) {
        self.bits[index] = false;
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Member indices in layout order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.n;
        self.indices().map(move |i| {
            if i < n {
                Element::Vertex(i)
            } else {
                Element::Edge(i - n)
            }
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices().take_while(move |&i| i < self.n)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.indices().filter(move |&i| i >= n).map(move |i| i - n)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.len() == other.bits.len()
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Characteristic vector as floats.
    pub fn to_f64(&self) -> Vec<f64> {
        self.bits
            .iter()
            .map(|&b| if b { 1.0 } else { 0.0 })
            .collect()
    }

    /// Inner product with a weight vector in layout order.
    pub fn weight(&self, weights: &[f64]) -> f64 {
        self.indices().map(|i| weights[i]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c5() -> Graph {
        named_graph(&NamedGraph::Cycle(5)).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(matches!(
            Graph::new(3, [(0, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn edges_are_normalized_and_ids_stable() {
        let g = Graph::new(4, [(2, 1), (0, 3), (3, 1)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (0, 3), (1, 3)]);
        assert_eq!(g.edge_id(3, 1), Some(2));
        assert_eq!(g.edge_id(0, 1), None);
    }

    #[test]
    fn adjacency_examples() {
        let g = c5();
        let e01 = g.edge_id(0, 1).unwrap();
        assert!(elements_adjacent(&g, Element::Vertex(0), Element::Edge(e01)).unwrap());
        assert!(!elements_adjacent(&g, Element::Vertex(0), Element::Vertex(2)).unwrap());

        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let a = k4.edge_id(0, 1).unwrap();
        let b = k4.edge_id(2, 3).unwrap();
        assert!(!elements_adjacent(&k4, Element::Edge(a), Element::Edge(b)).unwrap());
        // independent check: edges are adjacent iff endpoint sets intersect
        for e in 0..k4.m() {
            for f in 0..k4.m() {
                let (p, q) = k4.edge(e);
                let (r, s) = k4.edge(f);
                let share = [p, q].iter().any(|x| *x == r || *x == s);
                assert_eq!(
                    elements_adjacent(&k4, Element::Edge(e), Element::Edge(f)).unwrap(),
                    e != f && share
                );
            }
        }
    }

    #[test]
    fn adjacency_rejects_invalid_ids() {
        let g = c5();
        assert!(matches!(
            elements_adjacent(&g, Element::Vertex(5), Element::Vertex(0)),
            Err(Error::InvalidElement { .. })
        ));
        assert!(matches!(
            elements_adjacent(&g, Element::Vertex(0), Element::Edge(5)),
            Err(Error::InvalidElement { .. })
        ));
    }

    #[test]
    fn element_set_layout() {
        let g = c5();
        let s = ElementSet::from_elements(&g, [Element::Vertex(3), Element::Edge(1)]).unwrap();
        assert_eq!(s.len(), 10);
        assert!(s.contains_index(3) && s.contains_index(6));
        assert_eq!(s.vertices().collect::<Vec<_>>(), [3]);
        assert_eq!(s.edges().collect::<Vec<_>>(), [1]);
        assert!(ElementSet::from_bits(&g, vec![false; 9]).is_err());
    }

    #[test]
    fn element_neighbors_match_pairwise_adjacency() {
        let g = named_graph(&NamedGraph::Petersen).unwrap();
        for i in 0..g.num_elements() {
            let expected: Vec<usize> = (0..g.num_elements())
                .filter(|&j| g.adjacent_unchecked(g.element_at(i), g.element_at(j)) && i != j)
                .collect();
            assert_eq!(g.element_neighbors(i), expected);
        }
    }

    proptest! {
        #[test]
        fn adjacency_symmetric_irreflexive(seed in 0u64..500, n in 1usize..8) {
            let g = random_gnp(n, 0.5, seed).unwrap();
            let els: Vec<Element> = g.elements().collect();
            for &a in &els {
                prop_assert!(!elements_adjacent(&g, a, a).unwrap());
                for &b in &els {
                    prop_assert_eq!(
                        elements_adjacent(&g, a, b).unwrap(),
                        elements_adjacent(&g, b, a).unwrap()
                    );
                }
            }
        }

        #[test]
        fn handshake(seed in 0u64..500, n in 1usize..30) {
            let g = random_gnp(n, 0.3, seed).unwrap();
            let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(total, 2 * g.m());
        }
    }
}
