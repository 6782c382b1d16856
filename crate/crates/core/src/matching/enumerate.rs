use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{TotalMatching, WeightVector, BRUTEFORCE_CAP, MAXIMAL_ENUM_CAP};
use crate::graph::{ElementSet, Graph};
use crate::{Error, Result};

fn check_cap(g: &Graph, what: &'static str, cap: usize) -> Result<()> {
    let size = g.num_elements();
    if size > cap {
        return Err(Error::SizeLimit { what, cap, size });
    }
    Ok(())
}

struct Backtrack<'a> {
    g: &'a Graph,
    neighbors: Vec<Vec<usize>>,
    // number of chosen members adjacent to each element
    blocked: Vec<u32>,
    chosen: Vec<bool>,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Graph) -> Self {
        let k = g.num_elements();
        Backtrack {
            g,
            neighbors: (0..k).map(|i| g.element_neighbors(i)).collect(),
            blocked: vec![0; k],
            chosen: vec![false; k],
        }
    }

    fn take(&mut self, i: usize) {
        self.chosen[i] = true;
        for &j in &self.neighbors[i] {
            self.blocked[j] += 1;
        }
    }

    fn drop(&mut self, i: usize) {
        self.chosen[i] = false;
        for &j in &self.neighbors[i] {
            self.blocked[j] -= 1;
        }
    }

    fn set(&self) -> ElementSet {
        ElementSet::from_bits(self.g, self.chosen.clone()).expect("length matches")
    }

    fn all(&mut self, i: usize, out: &mut Vec<TotalMatching>) {
        if i == self.chosen.len() {
            out.push(TotalMatching::new_unchecked(self.set()));
            return;
        }
        self.all(i + 1, out);
        if self.blocked[i] == 0 {
            self.take(i);
            self.all(i + 1, out);
            self.drop(i);
        }
    }

    fn maximal(&mut self, i: usize, out: &mut Vec<TotalMatching>) {
        let k = self.chosen.len();
        if i == k {
            // excluded elements must all be blocked
            let ok = (0..k).all(|j| self.chosen[j] || self.blocked[j] > 0);
            if ok {
                out.push(TotalMatching::new_unchecked(self.set()));
            }
            return;
        }
        if self.blocked[i] == 0 {
            self.take(i);
            self.maximal(i + 1, out);
            self.drop(i);
            // leaving i out requires a later neighbor to block it
            if self.neighbors[i]
                .iter()
                .any(|&j| j > i && self.blocked[j] == 0)
            {
                self.maximal(i + 1, out);
            }
        } else {
            self.maximal(i + 1, out);
        }
    }

    fn best(
        &mut self,
        i: usize,
        w: &[f64],
        suffix: &[f64],
        value: f64,
        best: &mut (f64, Vec<bool>),
    ) {
        if value > best.0 + 1e-12 {
            *best = (value, self.chosen.clone());
        }
        if i == self.chosen.len() || value + suffix[i] <= best.0 + 1e-12 {
            return;
        }
        if self.blocked[i] == 0 && w[i] > 0.0 {
            self.take(i);
            self.best(i + 1, w, suffix, value + w[i], best);
            self.drop(i);
        }
        self.best(i + 1, w, suffix, value, best);
    }
}

/// Every total matching (including the empty one), each exactly once.
pub fn all_total_matchings(g: &Graph) -> Result<Vec<TotalMatching>> {
    check_cap(g, "total matching enumeration", BRUTEFORCE_CAP)?;
    let mut out = Vec::new();
    Backtrack::new(g).all(0, &mut out);
    Ok(out)
}

/// Every inclusion-maximal total matching, each exactly once.
pub fn enumerate_maximal_total_matchings(g: &Graph) -> Result<Vec<TotalMatching>> {
    check_cap(g, "maximal total matching enumeration", MAXIMAL_ENUM_CAP)?;
    let mut out = Vec::new();
    Backtrack::new(g).maximal(0, &mut out);
    Ok(out)
}

/// Maximum weighted total matching by exhaustive backtracking.
pub fn mwtmp_bruteforce(g: &Graph, w: &WeightVector) -> Result<(f64, TotalMatching)> {
    check_cap(g, "brute-force total matching", BRUTEFORCE_CAP)?;
    w.check(g)?;
    let weights = w.layout();
    let k = weights.len();
    let mut suffix = vec![0.0; k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1] + weights[i].max(0.0);
    }
    let mut best = (0.0, vec![false; k]);
    Backtrack::new(g).best(0, &weights, &suffix, 0.0, &mut best);
    let set =
        ElementSet::from_bits(g, best.1).map_err(|e| Error::InvalidParameter(format!("{e}")))?;
    let tm = TotalMatching::new_unchecked(set);
    Ok((tm.weight(w), tm))
}
