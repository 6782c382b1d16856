//! Dense-tableau bounded simplex.
//!
//! Every row `r` gets a slack `s_r` with `a_r x + s_r = b_r`; the slack's
//! bounds encode the relation (`<=`: `[0, inf)`, `>=`: `(-inf, 0]`, `=`:
//! `[0, 0]`). The tableau holds `B^-1 [A | I]`, so the slack columns are the
//! basis inverse, which makes appending rows and columns cheap. Internally the
//! objective is always minimized.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{normalize_row, ModelSpec, MpError, Relation, Sense, Solution, Status};

const PIVOT_TOL: f64 = 1e-9;
const PRIMAL_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-7;
const DROP_TOL: f64 = 1e-13;
const BLAND_AFTER: usize = 60;
const PERTURB_AFTER: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Basic(usize),
    Lower,
    Upper,
    /// Nonbasic free column resting at zero.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Structural(usize),
    Slack(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Done,
    Infeasible,
    Unbounded,
}

/// An LP kept factorized between solves.
///
/// Integrality flags of the source model are ignored.
#[derive(Debug, Clone)]
pub struct LpSession {
    sense: Sense,
    offset: f64,
    // original data
    rows: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
    relations: Vec<Relation>,
    user_obj: Vec<f64>,
    var_col: Vec<usize>,
    slack_col: Vec<usize>,
    // per column
    kind: Vec<Kind>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    state: Vec<State>,
    x: Vec<f64>,
    d: Vec<f64>,
    // per row
    t: Vec<Vec<f64>>,
    beta: Vec<f64>,
    head: Vec<usize>,
    status: Option<Status>,
    iterations: usize,
}

impl LpSession {
    pub fn new(spec: &ModelSpec) -> Result<Self, MpError> {
        let mut lp = LpSession {
            sense: spec.sense(),
            offset: spec.offset(),
            rows: Vec::new(),
            rhs: Vec::new(),
            relations: Vec::new(),
            user_obj: Vec::new(),
            var_col: Vec::new(),
            slack_col: Vec::new(),
            kind: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            cost: Vec::new(),
            state: Vec::new(),
            x: Vec::new(),
            d: Vec::new(),
            t: Vec::new(),
            beta: Vec::new(),
            head: Vec::new(),
            status: None,
            iterations: 0,
        };
        for (v, &c) in spec.variables().iter().zip(spec.objective()) {
            lp.add_variable(v.lower, v.upper, c, &[])?;
        }
        for c in spec.constraints() {
            lp.add_constraint(c.coeffs.iter().copied(), c.relation, c.rhs)?;
        }
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        self.var_col.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Total simplex pivots performed so far.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Status of the last solve, `None` if the model changed since.
    pub fn status(&self) -> Option<Status> {
        self.status
    }

    fn ncols(&self) -> usize {
        self.kind.len()
    }

    fn internal_cost(&self, c: f64) -> f64 {
        match self.sense {
            Sense::Min => c,
            Sense::Max => -c,
        }
    }

    fn push_column(&mut self, kind: Kind, lower: f64, upper: f64, cost: f64) -> usize {
        let col = self.kind.len();
        self.kind.push(kind);
        self.lower.push(lower);
        self.upper.push(upper);
        self.cost.push(cost);
        self.state.push(State::Lower);
        self.x.push(0.0);
        self.d.push(cost);
        for row in &mut self.t {
            row.push(0.0);
        }
        col
    }

    /// Appends a variable; `column` lists its coefficients in existing rows.
    /// The variable enters nonbasic at a finite bound (or at zero if free).
    pub fn add_variable(
        &mut self,
        lower: f64,
        upper: f64,
        obj: f64,
        column: &[(usize, f64)],
    ) -> Result<usize, MpError> {
        if lower.is_nan() || upper.is_nan() || lower > upper || !obj.is_finite() {
            return Err(MpError::InvalidModel(format!(
                "variable bounds [{lower}, {upper}] objective {obj}"
            )));
        }
        let j = self.var_col.len();
        let cost = self.internal_cost(obj);
        let col = self.push_column(Kind::Structural(j), lower, upper, cost);
        self.var_col.push(col);
        self.user_obj.push(obj);
        // B^-1 a from the slack columns; d = c - y a with y_r = -d(slack_r)
        let mut dj = cost;
        for &(r, a) in column {
            if r >= self.rows.len() {
                return Err(MpError::InvalidModel(format!("column references row {r}")));
            }
            if a == 0.0 {
                continue;
            }
            self.rows[r].push((j, a));
            let s = self.slack_col[r];
            for i in 0..self.t.len() {
                let v = self.t[i][s];
                if v != 0.0 {
                    self.t[i][col] += a * v;
                }
            }
            dj += a * self.d[s];
        }
        self.d[col] = dj;
        self.place_nonbasic(col, State::Lower);
        let v = self.x[col];
        if v != 0.0 {
            self.shift_basics(col, v);
        }
        self.status = None;
        Ok(j)
    }

    /// Appends a row over existing variables; returns its index.
    pub fn add_constraint<I>(
        &mut self,
        coeffs: I,
        relation: Relation,
        rhs: f64,
    ) -> Result<usize, MpError>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let row = normalize_row(coeffs, self.var_col.len())?;
        if !rhs.is_finite() {
            return Err(MpError::InvalidModel(format!("constraint rhs {rhs}")));
        }
        let r = self.rows.len();
        let (lo, hi) = slack_bounds(relation);
        let s = self.push_column(Kind::Slack(r), lo, hi, 0.0);
        self.slack_col.push(s);
        let ncols = self.ncols();
        let mut new_row = vec![0.0; ncols];
        for &(j, a) in &row {
            new_row[self.var_col[j]] = a;
        }
        new_row[s] = 1.0;
        let mut b = rhs;
        // eliminate basic columns
        for i in 0..self.t.len() {
            let h = self.head[i];
            let f = new_row[h];
            if f != 0.0 {
                for (dst, src) in new_row.iter_mut().zip(&self.t[i]) {
                    *dst -= f * src;
                }
                new_row[h] = 0.0;
                b -= f * self.beta[i];
            }
        }
        for v in new_row.iter_mut() {
            if v.abs() < DROP_TOL {
                *v = 0.0;
            }
        }
        let activity: f64 = row.iter().map(|&(j, a)| a * self.x[self.var_col[j]]).sum();
        self.t.push(new_row);
        self.beta.push(b);
        self.head.push(s);
        self.state[s] = State::Basic(r);
        self.x[s] = rhs - activity;
        self.d[s] = 0.0;
        self.rows.push(row);
        self.rhs.push(rhs);
        self.relations.push(relation);
        self.status = None;
        Ok(r)
    }

    /// Changes the bounds of variable `j`, keeping the basis.
    pub fn set_bounds(&mut self, j: usize, lower: f64, upper: f64) -> Result<(), MpError> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(MpError::InvalidModel(format!("bounds [{lower}, {upper}]")));
        }
        let col = self.var_col[j];
        if self.lower[col] == lower && self.upper[col] == upper {
            return Ok(());
        }
        self.lower[col] = lower;
        self.upper[col] = upper;
        if !matches!(self.state[col], State::Basic(_)) {
            let old = self.x[col];
            let prefer = self.state[col];
            self.place_nonbasic(col, prefer);
            let delta = self.x[col] - old;
            if delta != 0.0 {
                self.shift_basics(col, delta);
            }
        }
        self.status = None;
        Ok(())
    }

    pub fn bounds(&self, j: usize) -> (f64, f64) {
        let c = self.var_col[j];
        (self.lower[c], self.upper[c])
    }

    /// Puts nonbasic `col` on a finite bound, preferring the side it was on.
    fn place_nonbasic(&mut self, col: usize, prefer: State) {
        let (lo, hi) = (self.lower[col], self.upper[col]);
        let st = match prefer {
            State::Upper if hi.is_finite() => State::Upper,
            _ if lo.is_finite() => State::Lower,
            _ if hi.is_finite() => State::Upper,
            _ => State::Zero,
        };
        self.state[col] = st;
        self.x[col] = match st {
            State::Lower => lo,
            State::Upper => hi,
            _ => 0.0,
        };
    }

    /// Moves basics after nonbasic `col` changed by `delta`.
    fn shift_basics(&mut self, col: usize, delta: f64) {
        for i in 0..self.t.len() {
            let a = self.t[i][col];
            if a != 0.0 {
                let h = self.head[i];
                self.x[h] -= a * delta;
            }
        }
    }

    /// Solves from the current basis.
    pub fn solve(&mut self) -> Result<Status, MpError> {
        let mut refactored = false;
        for _attempt in 0..4 {
            let outcome = self.run()?;
            match outcome {
                Outcome::Done => {
                    if self.residual() <= RESIDUAL_TOL && self.max_dual_infeasibility() <= 1e-7 {
                        self.status = Some(Status::Optimal);
                        return Ok(Status::Optimal);
                    }
                }
                Outcome::Infeasible | Outcome::Unbounded => {
                    if refactored || self.row_residual() <= RESIDUAL_TOL {
                        let st = if outcome == Outcome::Infeasible {
                            Status::Infeasible
                        } else {
                            Status::Unbounded
                        };
                        self.status = Some(st);
                        return Ok(st);
                    }
                }
            }
            self.refactor();
            refactored = true;
        }
        Err(MpError::Numerical(format!(
            "simplex did not converge on {} rows and {} columns",
            self.rows.len(),
            self.ncols()
        )))
    }

    fn run(&mut self) -> Result<Outcome, MpError> {
        self.recompute_xb();
        if !self.primal_feasible() {
            if self.max_dual_infeasibility() <= DUAL_TOL * 10.0 {
                if self.dual_simplex()? == Outcome::Infeasible {
                    return Ok(Outcome::Infeasible);
                }
            } else if self.primal_simplex(true)? == Outcome::Infeasible {
                return Ok(Outcome::Infeasible);
            }
        }
        self.recompute_d();
        self.primal_simplex(false)
    }

    fn limit(&self) -> usize {
        50_000 + 50 * (self.rows.len() + self.ncols())
    }

    fn infeasibility(&self, col: usize) -> f64 {
        let v = self.x[col];
        if v < self.lower[col] - PRIMAL_TOL {
            self.lower[col] - v
        } else if v > self.upper[col] + PRIMAL_TOL {
            v - self.upper[col]
        } else {
            0.0
        }
    }

    fn primal_feasible(&self) -> bool {
        self.head.iter().all(|&h| self.infeasibility(h) == 0.0)
    }

    fn max_dual_infeasibility(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for col in 0..self.ncols() {
            let dj = self.d[col];
            let bad = match self.state[col] {
                State::Basic(_) => 0.0,
                _ if self.lower[col] == self.upper[col] => 0.0,
                State::Lower => -dj,
                State::Upper => dj,
                State::Zero => dj.abs(),
            };
            worst = worst.max(bad);
        }
        worst
    }

    /// Bounded primal simplex; phase 1 minimizes the sum of infeasibilities.
    fn primal_simplex(&mut self, phase1: bool) -> Result<Outcome, MpError> {
        let ncols = self.ncols();
        let mut d1 = vec![0.0; if phase1 { ncols } else { 0 }];
        let mut degenerate = 0usize;
        let limit = self.limit();
        let mut count = 0usize;
        loop {
            count += 1;
            if count > limit {
                return Err(MpError::Numerical("primal simplex iteration limit".into()));
            }
            if phase1 {
                d1.iter_mut().for_each(|v| *v = 0.0);
                let mut any = false;
                for i in 0..self.t.len() {
                    let h = self.head[i];
                    let w = if self.x[h] < self.lower[h] - PRIMAL_TOL {
                        -1.0
                    } else if self.x[h] > self.upper[h] + PRIMAL_TOL {
                        1.0
                    } else {
                        continue;
                    };
                    any = true;
                    for (dst, &a) in d1.iter_mut().zip(&self.t[i]) {
                        if a != 0.0 {
                            *dst -= w * a;
                        }
                    }
                }
                if !any {
                    return Ok(Outcome::Done);
                }
            }
            let bland = degenerate > BLAND_AFTER;
            let dvec = if phase1 { &d1 } else { &self.d };
            let mut best: Option<(usize, f64)> = None;
            let mut best_score = 0.0;
            for col in 0..ncols {
                let st = self.state[col];
                if matches!(st, State::Basic(_)) || self.lower[col] == self.upper[col] {
                    continue;
                }
                let dj = dvec[col];
                let dir = match st {
                    State::Lower if dj < -DUAL_TOL => 1.0,
                    State::Upper if dj > DUAL_TOL => -1.0,
                    State::Zero if dj.abs() > DUAL_TOL => {
                        if dj < 0.0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    _ => continue,
                };
                if bland {
                    best = Some((col, dir));
                    break;
                }
                if dj.abs() > best_score {
                    best_score = dj.abs();
                    best = Some((col, dir));
                }
            }
            let Some((q, dir)) = best else {
                return Ok(if phase1 {
                    Outcome::Infeasible
                } else {
                    Outcome::Done
                });
            };
            let (leave, theta) = self.primal_ratio(q, dir, phase1, bland);
            let span = self.upper[q] - self.lower[q];
            match leave {
                Some((r, _)) if theta <= span => {
                    let (_, to_upper) = leave.unwrap();
                    self.step(q, dir * theta);
                    let h = self.head[r];
                    self.pivot(r, q);
                    if to_upper {
                        self.state[h] = State::Upper;
                        self.x[h] = self.upper[h];
                    } else {
                        self.state[h] = State::Lower;
                        self.x[h] = self.lower[h];
                    }
                    if !self.lower[h].is_finite() && !self.upper[h].is_finite() {
                        self.state[h] = State::Zero;
                    }
                    if theta < 1e-12 {
                        degenerate += 1;
                    } else {
                        degenerate = 0;
                    }
                }
                _ if span.is_finite() => {
                    // bound flip
                    self.step(q, dir * span);
                    if dir > 0.0 {
                        self.state[q] = State::Upper;
                        self.x[q] = self.upper[q];
                    } else {
                        self.state[q] = State::Lower;
                        self.x[q] = self.lower[q];
                    }
                    degenerate = 0;
                }
                _ => {
                    if phase1 {
                        return Err(MpError::Numerical("unbounded phase-1 ray".into()));
                    }
                    return Ok(Outcome::Unbounded);
                }
            }
        }
    }

    /// Ratio test for entering `q` moving in direction `dir`. Returns the
    /// leaving row (and whether it leaves at its upper bound) and the step.
    fn primal_ratio(
        &self,
        q: usize,
        dir: f64,
        phase1: bool,
        bland: bool,
    ) -> (Option<(usize, bool)>, f64) {
        // target bound for each blocking row
        let block = |i: usize, alpha: f64| -> Option<(f64, bool)> {
            let h = self.head[i];
            let v = self.x[h];
            let (lo, hi) = (self.lower[h], self.upper[h]);
            if alpha > 0.0 {
                // decreasing
                if phase1 && v > hi + PRIMAL_TOL {
                    Some((hi, true))
                } else if phase1 && v < lo - PRIMAL_TOL {
                    None
                } else if lo.is_finite() {
                    Some((lo, false))
                } else {
                    None
                }
            } else if phase1 && v < lo - PRIMAL_TOL {
                Some((lo, false))
            } else if phase1 && v > hi + PRIMAL_TOL {
                None
            } else if hi.is_finite() {
                Some((hi, true))
            } else {
                None
            }
        };
        let m = self.t.len();
        if bland {
            let mut best: Option<(usize, bool)> = None;
            let mut best_theta = f64::INFINITY;
            let mut best_head = usize::MAX;
            for i in 0..m {
                let alpha = self.t[i][q] * dir;
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                let Some((bound, up)) = block(i, alpha) else {
                    continue;
                };
                let theta = ((self.x[self.head[i]] - bound) / alpha).max(0.0);
                if theta < best_theta - 1e-12
                    || (theta <= best_theta + 1e-12 && self.head[i] < best_head)
                {
                    best_theta = theta;
                    best = Some((i, up));
                    best_head = self.head[i];
                }
            }
            return (best, best_theta);
        }
        // Harris pass 1
        let mut theta_max = f64::INFINITY;
        for i in 0..m {
            let alpha = self.t[i][q] * dir;
            if alpha.abs() <= PIVOT_TOL {
                continue;
            }
            let Some((bound, _)) = block(i, alpha) else {
                continue;
            };
            let relaxed = if alpha > 0.0 {
                (self.x[self.head[i]] - bound + PRIMAL_TOL) / alpha
            } else {
                (self.x[self.head[i]] - bound - PRIMAL_TOL) / alpha
            };
            theta_max = theta_max.min(relaxed);
        }
        if theta_max == f64::INFINITY {
            return (None, f64::INFINITY);
        }
        // pass 2: largest pivot among rows blocking within theta_max
        let mut best: Option<(usize, bool)> = None;
        let mut best_alpha = 0.0;
        let mut best_theta = 0.0;
        for i in 0..m {
            let alpha = self.t[i][q] * dir;
            if alpha.abs() <= PIVOT_TOL {
                continue;
            }
            let Some((bound, up)) = block(i, alpha) else {
                continue;
            };
            let theta = (self.x[self.head[i]] - bound) / alpha;
            if theta <= theta_max && alpha.abs() > best_alpha {
                best_alpha = alpha.abs();
                best = Some((i, up));
                best_theta = theta.max(0.0);
            }
        }
        (best, best_theta)
    }

    /// Moves nonbasic `q` by `delta` and updates the basics.
    fn step(&mut self, q: usize, delta: f64) {
        if delta == 0.0 {
            return;
        }
        self.x[q] += delta;
        self.shift_basics(q, delta);
    }

    /// Bounded dual simplex; requires a dual feasible basis.
    fn dual_simplex(&mut self) -> Result<Outcome, MpError> {
        let saved = self.cost.clone();
        let outcome = self.dual_loop();
        if self.cost != saved {
            self.cost = saved;
            self.recompute_d();
        }
        outcome
    }

    /// Shifts nonbasic costs by small distinct amounts away from zero
    /// reduced cost, which breaks dual degeneracy.
    fn perturb_costs(&mut self) {
        for col in 0..self.ncols() {
            if self.lower[col] == self.upper[col] {
                continue;
            }
            let eps = 1e-7 * (1.0 + ((col * 7919) % 997) as f64 / 997.0);
            let shift = match self.state[col] {
                State::Lower => eps,
                State::Upper => -eps,
                _ => continue,
            };
            self.cost[col] += shift;
            self.d[col] += shift;
        }
    }

    fn dual_loop(&mut self) -> Result<Outcome, MpError> {
        let limit = self.limit();
        let mut degenerate = 0usize;
        let mut perturbed = false;
        for _ in 0..limit {
            if !perturbed && degenerate > PERTURB_AFTER {
                self.perturb_costs();
                perturbed = true;
                degenerate = 0;
            }
            let bland = perturbed && degenerate > BLAND_AFTER;
            // leaving row
            let mut leave: Option<usize> = None;
            let mut worst = 0.0;
            for i in 0..self.t.len() {
                let inf = self.infeasibility(self.head[i]);
                if inf > 0.0 {
                    if bland {
                        if leave.is_none_or(|l| self.head[i] < self.head[l]) {
                            leave = Some(i);
                        }
                    } else {
                        // dual steepest edge: the slack columns of the tableau hold B^-1
                        let row = &self.t[i];
                        let w: f64 = self.slack_col.iter().map(|&c| row[c] * row[c]).sum();
                        let score = inf * inf / w.max(1e-12);
                        if score > worst {
                            worst = score;
                            leave = Some(i);
                        }
                    }
                }
            }
            let Some(r) = leave else {
                return Ok(Outcome::Done);
            };
            let h = self.head[r];
            let below = self.x[h] < self.lower[h];
            let target = if below { self.lower[h] } else { self.upper[h] };
            // x_h changes by -t[r][q] * delta_q; need sign(-t * delta) = up if below
            let eligible = |col: usize, a: f64| -> bool {
                if a.abs() <= PIVOT_TOL || self.lower[col] == self.upper[col] {
                    return false;
                }
                match self.state[col] {
                    State::Basic(_) => false,
                    State::Lower => (a < 0.0) == below,
                    State::Upper => (a > 0.0) == below,
                    State::Zero => true,
                }
            };
            let row = &self.t[r];
            let mut cands: Vec<(f64, usize)> = (0..row.len())
                .filter(|&col| eligible(col, row[col]))
                .map(|col| (self.d[col].abs() / row[col].abs(), col))
                .collect();
            if cands.is_empty() {
                return Ok(Outcome::Infeasible);
            }
            let mut flips = Vec::new();
            let (q, best_ratio) = if bland {
                cands
                    .iter()
                    .copied()
                    .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)))
                    .map(|(ratio, col)| (col, ratio))
                    .expect("non-empty")
            } else {
                // long step: pass boxed breakpoints by flipping them while
                // the leaving row stays infeasible
                cands.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
                let mut slope = (self.x[h] - target).abs();
                let mut k = 0;
                while k + 1 < cands.len() {
                    let col = cands[k].1;
                    let range = self.upper[col] - self.lower[col];
                    let drop = row[col].abs() * range;
                    if !range.is_finite() || slope - drop <= PRIMAL_TOL {
                        break;
                    }
                    slope -= drop;
                    flips.push(col);
                    k += 1;
                }
                // among near-ties, the largest pivot
                let limit = cands[k].0 + DUAL_TOL / row[cands[k].1].abs().max(1.0);
                let mut pick = cands[k];
                for &(ratio, col) in &cands[k + 1..] {
                    if ratio > limit {
                        break;
                    }
                    if row[col].abs() > row[pick.1].abs() {
                        pick = (ratio, col);
                    }
                }
                (pick.1, pick.0)
            };
            for col in flips {
                let (old, new, st) = match self.state[col] {
                    State::Lower => (self.x[col], self.upper[col], State::Upper),
                    _ => (self.x[col], self.lower[col], State::Lower),
                };
                self.state[col] = st;
                self.x[col] = new;
                self.shift_basics(col, new - old);
            }
            let delta = (self.x[h] - target) / self.t[r][q];
            self.step(q, delta);
            self.pivot(r, q);
            self.state[h] = if below { State::Lower } else { State::Upper };
            self.x[h] = target;
            if best_ratio <= DUAL_TOL {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
        }
        Err(MpError::Numerical("dual simplex iteration limit".into()))
    }

    fn pivot(&mut self, r: usize, q: usize) {
        self.iterations += 1;
        let piv = self.t[r][q];
        let inv = 1.0 / piv;
        {
            let row = &mut self.t[r];
            for v in row.iter_mut() {
                if *v != 0.0 {
                    *v *= inv;
                }
            }
            row[q] = 1.0;
        }
        self.beta[r] *= inv;
        let prow = core::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = prow
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, _)| j)
            .collect();
        let dense = nz.len() * 3 > prow.len();
        let br = self.beta[r];
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q];
            if f == 0.0 {
                continue;
            }
            if dense {
                for (dst, &src) in row.iter_mut().zip(&prow) {
                    *dst -= f * src;
                }
            } else {
                for &j in &nz {
                    row[j] -= f * prow[j];
                }
            }
            for &j in &nz {
                if row[j].abs() < DROP_TOL {
                    row[j] = 0.0;
                }
            }
            row[q] = 0.0;
            self.beta[i] -= f * br;
        }
        let f = self.d[q];
        if f != 0.0 {
            for &j in &nz {
                self.d[j] -= f * prow[j];
            }
            self.d[q] = 0.0;
        }
        self.t[r] = prow;
        let old = self.head[r];
        if let State::Basic(_) = self.state[old] {
            self.state[old] = State::Lower;
        }
        self.head[r] = q;
        self.state[q] = State::Basic(r);
    }

    fn recompute_xb(&mut self) {
        let nonzero: Vec<usize> = (0..self.ncols())
            .filter(|&c| !matches!(self.state[c], State::Basic(_)) && self.x[c] != 0.0)
            .collect();
        for i in 0..self.t.len() {
            let row = &self.t[i];
            let mut v = self.beta[i];
            for &c in &nonzero {
                v -= row[c] * self.x[c];
            }
            let h = self.head[i];
            self.x[h] = v;
        }
    }

    fn recompute_d(&mut self) {
        let mut d = self.cost.clone();
        for i in 0..self.t.len() {
            let cb = self.cost[self.head[i]];
            if cb == 0.0 {
                continue;
            }
            for (dst, &a) in d.iter_mut().zip(&self.t[i]) {
                if a != 0.0 {
                    *dst -= cb * a;
                }
            }
        }
        for &h in &self.head {
            d[h] = 0.0;
        }
        self.d = d;
    }

    /// Largest row residual or bound violation of the current point.
    fn residual(&self) -> f64 {
        let mut worst = self.row_residual();
        for col in 0..self.ncols() {
            worst = worst.max(self.infeasibility(col));
        }
        worst
    }

    fn row_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (r, row) in self.rows.iter().enumerate() {
            let lhs: f64 = row
                .iter()
                .map(|&(j, a)| a * self.x[self.var_col[j]])
                .sum::<f64>()
                + self.x[self.slack_col[r]];
            let scale = 1.0 + self.rhs[r].abs();
            worst = worst.max((lhs - self.rhs[r]).abs() / scale);
        }
        worst
    }

    /// Rebuilds `B^-1 [A | I]` from the original rows for the current basis.
    fn refactor(&mut self) {
        let m = self.rows.len();
        let ncols = self.ncols();
        let mut t = vec![vec![0.0; ncols]; m];
        for (r, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                t[r][self.var_col[j]] = a;
            }
            t[r][self.slack_col[r]] = 1.0;
        }
        let mut beta = self.rhs.clone();
        let mut basics: Vec<usize> = self.head.clone();
        basics.sort_by_key(|&c| (matches!(self.kind[c], Kind::Structural(_)), c));
        let mut assigned = vec![usize::MAX; m];
        let mut row_used = vec![false; m];
        let gj = |t: &mut Vec<Vec<f64>>, beta: &mut Vec<f64>, r: usize, q: usize| {
            let inv = 1.0 / t[r][q];
            for v in t[r].iter_mut() {
                *v *= inv;
            }
            t[r][q] = 1.0;
            beta[r] *= inv;
            let prow = core::mem::take(&mut t[r]);
            let br = beta[r];
            for (i, row) in t.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let f = row[q];
                if f == 0.0 {
                    continue;
                }
                for (dst, &src) in row.iter_mut().zip(&prow) {
                    *dst -= f * src;
                }
                row[q] = 0.0;
                beta[i] -= f * br;
            }
            t[r] = prow;
        };
        let mut dropped = Vec::new();
        for &c in &basics {
            let mut best = None;
            let mut best_abs = 1e-9;
            for i in 0..m {
                if !row_used[i] && t[i][c].abs() > best_abs {
                    best_abs = t[i][c].abs();
                    best = Some(i);
                }
            }
            match best {
                Some(i) => {
                    gj(&mut t, &mut beta, i, c);
                    row_used[i] = true;
                    assigned[i] = c;
                }
                None => dropped.push(c),
            }
        }
        for c in &dropped {
            let prefer = State::Lower;
            self.state[*c] = prefer;
            self.place_nonbasic(*c, prefer);
        }
        // repair rank deficiency with the best available nonbasic column
        for i in 0..m {
            if row_used[i] {
                continue;
            }
            let mut best = self.slack_col[i];
            let mut best_abs = 0.0;
            for c in 0..ncols {
                if assigned.contains(&c) {
                    continue;
                }
                let v = t[i][c].abs();
                let slack_bonus = if matches!(self.kind[c], Kind::Slack(_)) {
                    2.0
                } else {
                    1.0
                };
                if v * slack_bonus > best_abs {
                    best_abs = v * slack_bonus;
                    best = c;
                }
            }
            gj(&mut t, &mut beta, i, best);
            row_used[i] = true;
            assigned[i] = best;
        }
        for c in 0..ncols {
            if let State::Basic(_) = self.state[c] {
                if !assigned.contains(&c) {
                    self.place_nonbasic(c, State::Lower);
                }
            }
        }
        for (i, &c) in assigned.iter().enumerate() {
            self.state[c] = State::Basic(i);
        }
        self.t = t;
        self.beta = beta;
        self.head = assigned;
        self.recompute_xb();
        self.recompute_d();
    }

    /// Objective in the model's sense (valid after an optimal solve).
    pub fn objective(&self) -> f64 {
        self.offset
            + self
                .var_col
                .iter()
                .zip(&self.user_obj)
                .map(|(&c, &o)| o * self.x[c])
                .sum::<f64>()
    }

    pub fn value(&self, j: usize) -> f64 {
        self.x[self.var_col[j]]
    }

    pub fn primal(&self) -> Vec<f64> {
        self.var_col.iter().map(|&c| self.x[c]).collect()
    }

    /// Row duals in the model's sense.
    pub fn duals(&self) -> Vec<f64> {
        self.slack_col
            .iter()
            .map(|&s| {
                let y = -self.d[s];
                let y = if self.sense == Sense::Max { -y } else { y };
                if y == 0.0 {
                    0.0
                } else {
                    y
                }
            })
            .collect()
    }

    /// Snapshot of the last solve.
    pub fn solution(&self) -> Solution {
        match self.status {
            Some(Status::Optimal) => Solution {
                status: Status::Optimal,
                objective: self.objective(),
                primal: self.primal(),
                duals: self.duals(),
            },
            Some(st) => Solution::without_optimum(st),
            None => Solution::without_optimum(Status::Infeasible),
        }
    }
}

fn slack_bounds(rel: Relation) -> (f64, f64) {
    match rel {
        Relation::Le => (0.0, f64::INFINITY),
        Relation::Ge => (f64::NEG_INFINITY, 0.0),
        Relation::Eq => (0.0, 0.0),
    }
}
