//! LP-based branch-and-bound.

use alloc::boxed::Box;
use alloc::collections::BinaryHeap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::float::FloatCore;

use super::{LpSession, ModelSpec, MpError, Sense, Solution, Status, FEAS_TOL, INT_TOL};

/// Knobs for [`solve_mip_with`].
#[derive(Debug, Clone)]
pub struct MipOptions {
    /// Maximum number of LP nodes before giving up with [`MpError::NodeLimit`].
    pub node_limit: usize,
    /// A feasible point to start from; ignored when infeasible.
    pub incumbent: Option<Vec<f64>>,
    /// A proven bound on the optimum in the model's sense (upper bound when
    /// maximizing). The search stops as soon as the incumbent attains it.
    pub known_bound: Option<f64>,
}

impl Default for MipOptions {
    fn default() -> Self {
        MipOptions {
            node_limit: 2_000_000,
            incumbent: None,
            known_bound: None,
        }
    }
}

/// Solves `spec` to proven optimality with default options.
pub fn solve_mip(spec: &ModelSpec) -> Result<Solution, MpError> {
    solve_mip_with(spec, &MipOptions::default())
}

struct Change {
    var: usize,
    lower: f64,
    upper: f64,
    parent: Option<Rc<Change>>,
}

struct Node {
    // internal (minimization) bound
    bound: f64,
    depth: usize,
    seq: usize,
    changes: Option<Rc<Change>>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // max-heap: smallest bound first, then deeper, then newest
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(self.seq.cmp(&other.seq))
    }
}

struct Search<'a> {
    spec: &'a ModelSpec,
    sign: f64,
    integral_objective: bool,
    int_vars: Vec<usize>,
    // internal objective of the incumbent
    best: f64,
    incumbent: Option<Vec<f64>>,
}

impl Search<'_> {
    fn internal(&self, user: f64) -> f64 {
        self.sign * user
    }

    /// Whether a node with internal bound `bound` can still beat the incumbent.
    fn promising(&self, bound: f64) -> bool {
        if self.incumbent.is_none() {
            return true;
        }
        if self.integral_objective {
            (bound - FEAS_TOL).ceil() < self.best - 0.5
        } else {
            bound < self.best - FEAS_TOL
        }
    }

    fn offer(&mut self, mut x: Vec<f64>) -> bool {
        for &j in &self.int_vars {
            x[j] = x[j].round();
        }
        if self.spec.max_violation(&x, true) > FEAS_TOL {
            return false;
        }
        let obj = self.internal(self.spec.evaluate(&x));
        if self.incumbent.is_none() || obj < self.best - 1e-12 {
            self.best = obj;
            self.incumbent = Some(x);
            true
        } else {
            false
        }
    }

    fn try_rounding(&mut self, x: &[f64]) {
        for rule in 0..3 {
            let mut y = x.to_vec();
            for &j in &self.int_vars {
                y[j] = match rule {
                    0 => y[j].round(),
                    1 => (y[j] + INT_TOL).floor(),
                    _ => (y[j] - INT_TOL).ceil(),
                };
            }
            if self.offer(y) {
                return;
            }
        }
    }

    fn solution(&self) -> Option<Solution> {
        self.incumbent.as_ref().map(|x| Solution {
            status: Status::Optimal,
            objective: self.spec.evaluate(x),
            primal: x.clone(),
            duals: Vec::new(),
        })
    }
}

/// Solves `spec` by best-bound branch-and-bound on the most fractional
/// integer variable.
pub fn solve_mip_with(spec: &ModelSpec, opts: &MipOptions) -> Result<Solution, MpError> {
    let sign = if spec.sense() == Sense::Max {
        -1.0
    } else {
        1.0
    };
    let int_vars: Vec<usize> = (0..spec.num_vars())
        .filter(|&j| spec.variables()[j].integer)
        .collect();
    let integral_objective = spec.offset().fract() == 0.0
        && spec
            .variables()
            .iter()
            .zip(spec.objective())
            .all(|(v, &c)| c == 0.0 || (v.integer && c.fract() == 0.0));
    let mut search = Search {
        spec,
        sign,
        integral_objective,
        int_vars,
        best: f64::INFINITY,
        incumbent: None,
    };
    if let Some(x) = &opts.incumbent {
        if x.len() == spec.num_vars() {
            search.offer(x.clone());
        }
    }
    let target = opts.known_bound.map(|b| sign * b);
    let reached = |s: &Search<'_>| match target {
        Some(t) => s.incumbent.is_some() && s.best <= t + FEAS_TOL,
        None => false,
    };
    if reached(&search) {
        return Ok(search.solution().expect("incumbent set"));
    }

    let mut lp = LpSession::new(spec)?;
    let root_bounds: Vec<(f64, f64)> = search
        .int_vars
        .iter()
        .map(|&j| {
            let v = &spec.variables()[j];
            (v.lower.ceil(), v.upper.floor())
        })
        .collect();
    for (k, &j) in search.int_vars.iter().enumerate() {
        let (lo, hi) = root_bounds[k];
        if lo > hi {
            return Ok(Solution::without_optimum(Status::Infeasible));
        }
        lp.set_bounds(j, lo, hi)?;
    }
    // position of each variable in int_vars
    let mut slot = alloc::vec![usize::MAX; spec.num_vars()];
    for (k, &j) in search.int_vars.iter().enumerate() {
        slot[j] = k;
    }

    let mut heap = BinaryHeap::new();
    heap.push(Node {
        bound: f64::NEG_INFINITY,
        depth: 0,
        seq: 0,
        changes: None,
    });
    let mut seq = 1usize;
    let mut nodes = 0usize;
    let mut root = true;
    let mut target_bounds = root_bounds.clone();
    while let Some(node) = heap.pop() {
        if !search.promising(node.bound) {
            continue;
        }
        if nodes >= opts.node_limit {
            let open = heap
                .iter()
                .map(|n| n.bound)
                .fold(node.bound, f64::min)
                .min(search.best);
            return Err(MpError::NodeLimit {
                limit: opts.node_limit,
                incumbent: search.solution().map(Box::new),
                bound: sign * open,
            });
        }
        nodes += 1;
        // bounds of this node
        target_bounds.copy_from_slice(&root_bounds);
        let mut path = Vec::new();
        let mut link = node.changes.as_ref();
        while let Some(c) = link {
            path.push(c);
            link = c.parent.as_ref();
        }
        for c in path.iter().rev() {
            target_bounds[slot[c.var]] = (c.lower, c.upper);
        }
        for (k, &j) in search.int_vars.iter().enumerate() {
            let (lo, hi) = target_bounds[k];
            lp.set_bounds(j, lo, hi)?;
        }
        match lp.solve()? {
            Status::Optimal => {}
            Status::Infeasible => {
                if root {
                    return Ok(search
                        .solution()
                        .unwrap_or_else(|| Solution::without_optimum(Status::Infeasible)));
                }
                continue;
            }
            Status::Unbounded => {
                if root {
                    return Ok(Solution::without_optimum(Status::Unbounded));
                }
                continue;
            }
        }
        root = false;
        let bound = sign * lp.objective();
        if !search.promising(bound) {
            continue;
        }
        let x = lp.primal();
        let mut branch: Option<usize> = None;
        let mut best_frac = INT_TOL;
        for &j in &search.int_vars {
            let f = (x[j] - x[j].floor()).min(x[j].ceil() - x[j]);
            if f > best_frac + 1e-12 {
                best_frac = f;
                branch = Some(j);
            }
        }
        match branch {
            None => {
                search.offer(x);
            }
            Some(j) => {
                search.try_rounding(&x);
                let (lo, hi) = target_bounds[slot[j]];
                let down = Change {
                    var: j,
                    lower: lo,
                    upper: x[j].floor(),
                    parent: node.changes.clone(),
                };
                let up = Change {
                    var: j,
                    lower: x[j].ceil(),
                    upper: hi,
                    parent: node.changes.clone(),
                };
                for change in [down, up] {
                    heap.push(Node {
                        bound,
                        depth: node.depth + 1,
                        seq,
                        changes: Some(Rc::new(change)),
                    });
                    seq += 1;
                }
            }
        }
        if reached(&search) {
            break;
        }
    }
    Ok(search
        .solution()
        .unwrap_or_else(|| Solution::without_optimum(Status::Infeasible)))
}
