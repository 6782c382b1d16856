use alloc::vec::Vec;

use super::{Element, Graph};

/// The total graph of `g` together with its element mapping.
#[derive(Debug, Clone)]
pub struct TotalGraph {
    pub graph: Graph,
    /// `map[i]` is the element of `g` represented by vertex `i`.
    pub map: Vec<Element>,
}

impl TotalGraph {
    /// Vertex of the total graph representing `el`.
    pub fn vertex_of(&self, g: &Graph, el: Element) -> usize {
        g.element_index(el)
    }
}

/// Builds the total graph: one vertex per element (layout order), joined
/// when the elements are adjacent in `g`.
pub fn total_graph(g: &Graph) -> TotalGraph {
    let mut edges = Vec::new();
    for i in 0..g.num_elements() {
        for j in g.element_neighbors(i) {
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(g.num_elements(), edges).expect("total graph is simple");
    let map = g.elements().collect();
    TotalGraph { graph, map }
}
