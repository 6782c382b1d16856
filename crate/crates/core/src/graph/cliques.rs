use alloc::vec::Vec;

use super::Graph;

/// All maximal cliques, each sorted ascending; the list is sorted
/// lexicographically. Bron–Kerbosch with Tomita pivoting.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: Vec<usize> = (0..g.n()).collect();
    expand(g, &mut r, p, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn expand(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("p is non-empty");
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&v| !g.has_edge(pivot, v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        expand(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// A maximum clique, sorted ascending.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    let adj = BitAdjacency::new(g.n(), |u, v| g.has_edge(u, v));
    adj.maximum_clique()
}

/// A maximum stable set, sorted ascending (a maximum clique of the complement).
pub fn maximum_stable_set(g: &Graph) -> Vec<usize> {
    let adj = BitAdjacency::new(g.n(), |u, v| u != v && !g.has_edge(u, v));
    adj.maximum_clique()
}

struct BitAdjacency {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitAdjacency {
    fn new(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut rows = alloc::vec![0u64; n * words];
        for u in 0..n {
            for v in 0..n {
                if u != v && adjacent(u, v) {
                    rows[u * words + v / 64] |= 1 << (v % 64);
                }
            }
        }
        BitAdjacency { n, words, rows }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    fn maximum_clique(&self) -> Vec<usize> {
        // candidates in non-increasing degree order
        let mut order: Vec<usize> = (0..self.n).collect();
        let degree = |v: usize| self.row(v).iter().map(|w| w.count_ones()).sum::<u32>();
        order.sort_by_key(|&v| (core::cmp::Reverse(degree(v)), v));
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.expand(&mut current, order, &mut best);
        best.sort_unstable();
        best
    }

    /// Greedy sequential coloring of `p`; returns vertices sorted by color
    /// with the color of each (1-based).
    fn color_sort(&self, p: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in p {
            match classes
                .iter_mut()
                .find(|c| c.iter().all(|&u| !self.has(u, v)))
            {
                Some(c) => c.push(v),
                None => classes.push(alloc::vec![v]),
            }
        }
        let mut verts = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        for (k, c) in classes.into_iter().enumerate() {
            for v in c {
                verts.push(v);
                colors.push(k + 1);
            }
        }
        (verts, colors)
    }

    fn expand(&self, current: &mut Vec<usize>, p: Vec<usize>, best: &mut Vec<usize>) {
        let (verts, colors) = self.color_sort(&p);
        let mut alive: Vec<bool> = alloc::vec![true; verts.len()];
        for i in (0..verts.len()).rev() {
            if current.len() + colors[i] <= best.len() {
                return;
            }
            let v = verts[i];
            current.push(v);
            let np: Vec<usize> = (0..i)
                .filter(|&j| alive[j] && self.has(v, verts[j]))
                .map(|j| verts[j])
                .collect();
            if np.is_empty() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(current, np, best);
            }
            current.pop();
            alive[i] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, random_gnp, NamedGraph};
    use alloc::vec;

    fn is_clique(g: &Graph, c: &[usize]) -> bool {
        c.iter()
            .enumerate()
            .all(|(i, &u)| c[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    #[test]
    fn small_cases() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        assert_eq!(maximal_cliques(&k4), vec![vec![0, 1, 2, 3]]);
        let c5 = named_graph(&NamedGraph::Cycle(5)).unwrap();
        assert_eq!(maximal_cliques(&c5).len(), 5);
        let p = named_graph(&NamedGraph::Petersen).unwrap();
        let cl = maximal_cliques(&p);
        assert_eq!(cl.len(), 15);
        assert!(cl.iter().all(|c| c.len() == 2));
        assert_eq!(
            maximal_cliques(&Graph::empty(3)),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn matches_subset_enumeration() {
        for seed in 0..40 {
            let g = random_gnp(9, 0.5, seed).unwrap();
            let mut expected = Vec::new();
            for mask in 1u32..(1 << 9) {
                let c: Vec<usize> = (0..9).filter(|&v| mask >> v & 1 == 1).collect();
                if !is_clique(&g, &c) {
                    continue;
                }
                let maximal = (0..9)
                    .filter(|&v| mask >> v & 1 == 0)
                    .all(|v| !c.iter().all(|&u| g.has_edge(u, v)));
                if maximal {
                    expected.push(c);
                }
            }
            expected.sort();
            assert_eq!(maximal_cliques(&g), expected, "seed {seed}");
        }
    }

    #[test]
    fn maximum_clique_matches_maximal_list() {
        for seed in 0..40 {
            let g = random_gnp(11, 0.45, seed).unwrap();
            let best = maximal_cliques(&g)
                .into_iter()
                .map(|c| c.len())
                .max()
                .unwrap();
            let c = maximum_clique(&g);
            assert!(is_clique(&g, &c));
            assert_eq!(c.len(), best, "seed {seed}");
            let s = maximum_stable_set(&g);
            let non_edges = (0..11).flat_map(|u| (u + 1..11).map(move |v| (u, v)));
            let complement = Graph::new(11, non_edges.filter(|&(u, v)| !g.has_edge(u, v))).unwrap();
            let alpha = maximal_cliques(&complement)
                .into_iter()
                .map(|c| c.len())
                .max()
                .unwrap();
            assert_eq!(s.len(), alpha);
            assert!(s
                .iter()
                .enumerate()
                .all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.has_edge(u, v))));
        }
        let p = named_graph(&NamedGraph::Petersen).unwrap();
        assert_eq!(maximum_stable_set(&p).len(), 4);
        assert_eq!(maximum_clique(&Graph::empty(0)).len(), 0);
    }
}
