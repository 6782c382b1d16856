use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{ElementSet, Graph};
use crate::matching::{extend_to_maximal, mwtmp_exact, TotalMatching, WeightVector};
use crate::Result;

const LOCAL_PASSES: usize = 50;

/// Pricing for the covering master: greedy plus swap search on the total
/// graph, falling back to the exact MWTMP when that finds nothing.
pub(super) struct Pricer<'a> {
    g: &'a Graph,
    nbrs: Vec<Vec<usize>>,
}

impl<'a> Pricer<'a> {
    pub(super) fn new(g: &'a Graph) -> Self {
        let nbrs = (0..g.num_elements())
            .map(|i| g.element_neighbors(i))
            .collect();
        Pricer { g, nbrs }
    }

    /// Distinct maximal columns of reduced weight above `threshold`, best first.
    pub(super) fn heuristic(&self, duals: &[f64], threshold: f64) -> Vec<TotalMatching> {
        let k = duals.len();
        let mut orders: Vec<Vec<usize>> = Vec::new();
        let mut by_weight: Vec<usize> = (0..k).filter(|&i| duals[i] > 0.0).collect();
        by_weight.sort_by(|&a, &b| duals[b].total_cmp(&duals[a]).then(a.cmp(&b)));
        let score = |i: usize| {
            let rival: f64 = self.nbrs[i].iter().map(|&j| duals[j]).sum();
            duals[i] / (1.0 + rival)
        };
        let mut by_ratio = by_weight.clone();
        by_ratio.sort_by(|&a, &b| score(b).total_cmp(&score(a)).then(a.cmp(&b)));
        let mut by_degree = by_weight.clone();
        by_degree.sort_by_key(|&i| self.nbrs[i].iter().filter(|&&j| duals[j] > 0.0).count());
        orders.push(by_weight);
        orders.push(by_ratio);
        orders.push(by_degree);

        let mut found: Vec<(f64, TotalMatching)> = Vec::new();
        for order in &orders {
            let chosen = self.local_search(duals, order);
            let value: f64 = (0..k).filter(|&i| chosen[i]).map(|i| duals[i]).sum();
            if value <= threshold {
                continue;
            }
            let set = ElementSet::from_bits(self.g, chosen).expect("sized to the layout");
            let t = extend_to_maximal(self.g, &TotalMatching::new_unchecked(set));
            if found.iter().all(|(_, u)| *u != t) {
                found.push((value, t));
            }
        }
        found.sort_by(|a, b| b.0.total_cmp(&a.0));
        found.into_iter().map(|(_, t)| t).collect()
    }

    /// Exact pricing; the value and a maximal column attaining it.
    pub(super) fn exact(&self, duals: &[f64]) -> Result<(f64, TotalMatching)> {
        let w = WeightVector::from_layout(self.g, duals)?;
        let (value, t) = mwtmp_exact(self.g, &w)?;
        Ok((value, extend_to_maximal(self.g, &t)))
    }

    fn local_search(&self, w: &[f64], order: &[usize]) -> Vec<bool> {
        let k = w.len();
        let mut chosen = vec![false; k];
        let mut blocked = vec![0u32; k];
        self.fill(&mut chosen, &mut blocked, order);
        for _ in 0..LOCAL_PASSES {
            let mut improved = false;
            for &x in order {
                if chosen[x] {
                    continue;
                }
                let lost: f64 = self.nbrs[x]
                    .iter()
                    .filter(|&&j| chosen[j])
                    .map(|&j| w[j])
                    .sum();
                if w[x] > lost + 1e-12 {
                    for &j in &self.nbrs[x] {
                        if chosen[j] {
                            self.toggle(j, false, &mut chosen, &mut blocked);
                        }
                    }
                    self.toggle(x, true, &mut chosen, &mut blocked);
                    improved = true;
                }
            }
            self.fill(&mut chosen, &mut blocked, order);
            if !improved {
                break;
            }
        }
        chosen
    }

    fn fill(&self, chosen: &mut [bool], blocked: &mut [u32], order: &[usize]) {
        for &i in order {
            if !chosen[i] && blocked[i] == 0 {
                self.toggle(i, true, chosen, blocked);
            }
        }
    }

    fn toggle(&self, i: usize, on: bool, chosen: &mut [bool], blocked: &mut [u32]) {
        chosen[i] = on;
        for &j in &self.nbrs[i] {
            if on {
                blocked[j] += 1;
            } else {
                blocked[j] -= 1;
            }
        }
    }
}
