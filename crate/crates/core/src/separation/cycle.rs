//! Congruent-2k3 cycle inequalities: for a cycle `C` with `k` vertices,
//! `sum_{v in C} x_v + sum_{e in C} y_e <= floor(2k/3)`.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use super::{better, CutInequality, Family, FractionalPoint};
use crate::graph::Graph;
use crate::mp::{self, ModelSpec, Relation, Sense, Status};
use crate::{Error, Result, VIOLATION_EPS};

/// Exact solver used once the shortest-path heuristic finds nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CycleBackend {
    /// Depth-first search over simple cycles pruned by closed-walk bounds;
    /// falls back to the integer program on points outside the basic system.
    #[default]
    Combinatorial,
    /// The network-flow integer program.
    Mip,
}

/// Expansion budget of the combinatorial search before it hands over to the MIP.
const SEARCH_BUDGET: usize = 20_000_000;

/// Cycle inequality on `cycle`, given as vertices in cyclic order.
pub fn cycle_cut(g: &Graph, cycle: &[usize]) -> Result<CutInequality> {
    let k = cycle.len();
    if k < 3 {
        return Err(Error::InvalidCut(format!(
            "a cycle needs 3 vertices, got {k}"
        )));
    }
    let mut seen = vec![false; g.n()];
    let mut edges = Vec::with_capacity(k);
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        if u >= g.n() || seen[u] {
            return Err(Error::InvalidCut(format!(
                "vertex {u} repeated or out of range"
            )));
        }
        seen[u] = true;
        let e = g
            .edge_id(u, v)
            .ok_or_else(|| Error::InvalidCut(format!("{{{u},{v}}} is not an edge")))?;
        edges.push(e);
    }
    Ok(CutInequality::unit(
        g,
        Family::Cycle,
        cycle.to_vec(),
        edges,
        (2 * k / 3) as f64,
    ))
}

fn floor_2k3(k: usize) -> f64 {
    (2 * k / 3) as f64
}

/// Violation of the cycle inequality on a closed vertex sequence.
fn cycle_violation(g: &Graph, p: &FractionalPoint, cycle: &[usize]) -> f64 {
    let k = cycle.len();
    let mut s = 0.0;
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        s += p.vertex(u) + p.edge(g, g.edge_id(u, v).expect("cycle edge"));
    }
    s - floor_2k3(k)
}

/// Rotates a cycle to start at its smallest vertex, smaller neighbor second.
fn canonical(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).expect("non-empty");
    let fwd: Vec<usize> = (0..k).map(|i| cycle[(start + i) % k]).collect();
    if fwd[1] <= fwd[k - 1] {
        fwd
    } else {
        let mut rev = vec![fwd[0]];
        rev.extend(fwd[1..].iter().rev());
        rev
    }
}

fn offer(
    g: &Graph,
    p: &FractionalPoint,
    best: Option<(f64, CutInequality)>,
    cycle: &[usize],
) -> Result<Option<(f64, CutInequality)>> {
    if cycle.len().is_multiple_of(3) {
        return Ok(best);
    }
    let viol = cycle_violation(g, p, cycle);
    if viol <= VIOLATION_EPS {
        return Ok(best);
    }
    if let Some((bv, _)) = &best {
        if viol < bv - 1e-9 {
            return Ok(best);
        }
    }
    Ok(better(best, (viol, cycle_cut(g, &canonical(cycle))?)))
}

#[derive(Clone, Copy, PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Shortest-path heuristic on the three-layer digraph.
///
/// Every vertex `v` has copies `v_0, v_1, v_2`; each edge `{v, w}` yields arcs
/// `v_i -> w_{i+1 mod 3}` and `w_i -> v_{i+1 mod 3}` of cost
/// `2/3 - c_v - w_e + 1` (tail vertex `v`). From every `s_0` a shortest path
/// to `s_1` and to `s_2` is projected back to `G`; closed walks that are
/// simple cycles with a positive violation are candidates, and the most
/// violated one is returned. Paths never traverse an edge and immediately
/// return along it, nor pass through `s` in the middle.
pub fn separate_cycle_sp(g: &Graph, p: &FractionalPoint) -> Result<Option<CutInequality>> {
    let n = g.n();
    let arcs = 2 * g.m();
    let tail = |a: usize| {
        let (u, v) = g.edge(a / 2);
        if a.is_multiple_of(2) {
            u
        } else {
            v
        }
    };
    let head = |a: usize| {
        let (u, v) = g.edge(a / 2);
        if a.is_multiple_of(2) {
            v
        } else {
            u
        }
    };
    let cost: Vec<f64> = (0..arcs)
        .map(|a| 2.0 / 3.0 - p.vertex(tail(a)) - p.edge(g, a / 2) + 1.0)
        .collect();
    if let Some(a) = (0..arcs).find(|&a| cost[a] < -1e-12) {
        return Err(Error::InvalidPoint(format!(
            "negative arc cost on edge {}; the point violates the basic system",
            a / 2
        )));
    }
    let mut out_arcs = vec![Vec::new(); n];
    for a in 0..arcs {
        out_arcs[tail(a)].push(a);
    }
    // state 3a + i: arc a has just been traversed, ending in layer i
    let mut best: Option<(f64, CutInequality)> = None;
    let mut dist = vec![f64::INFINITY; 3 * arcs];
    let mut pred = vec![usize::MAX; 3 * arcs];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = f64::INFINITY);
        pred.iter_mut().for_each(|q| *q = usize::MAX);
        let mut heap = BinaryHeap::new();
        for &a in &out_arcs[s] {
            dist[3 * a + 1] = cost[a].max(0.0);
            heap.push(Reverse(Item(dist[3 * a + 1], 3 * a + 1)));
        }
        while let Some(Reverse(Item(d, state))) = heap.pop() {
            if d > dist[state] {
                continue;
            }
            let (a, layer) = (state / 3, state % 3);
            let v = head(a);
            if v == s {
                continue;
            }
            for &b in &out_arcs[v] {
                if b / 2 == a / 2 {
                    continue;
                }
                let next = 3 * b + (layer + 1) % 3;
                let nd = d + cost[b].max(0.0);
                if nd < dist[next] - 1e-15 {
                    dist[next] = nd;
                    pred[next] = state;
                    heap.push(Reverse(Item(nd, next)));
                }
            }
        }
        for layer in [1, 2] {
            let target = (0..arcs)
                .filter(|&a| head(a) == s)
                .map(|a| 3 * a + layer)
                .filter(|&t| dist[t].is_finite())
                .min_by(|&x, &y| dist[x].total_cmp(&dist[y]).then(x.cmp(&y)));
            let Some(mut cur) = target else { continue };
            let mut walk = Vec::new();
            while cur != usize::MAX {
                walk.push(tail(cur / 3));
                cur = pred[cur];
            }
            walk.reverse();
            let mut seen = vec![false; n];
            let simple = walk.len() >= 3
                && walk
                    .iter()
                    .all(|&v| !core::mem::replace(&mut seen[v], true));
            if simple {
                best = offer(g, p, best, &walk)?;
            }
        }
    }
    Ok(best.map(|(_, c)| c))
}

/// Most violated cycle inequality from the network-flow integer program:
/// binaries `x, y` select a 2-regular subgraph, a single source (`s`) ships
/// one unit of flow `f` to every selected vertex along selected edges with
/// big-M `n`, and `sum x = 3z + t` with `t in {1, 2}` excludes lengths
/// divisible by three. The objective `sum c x + sum w y - (2z + t - 1)` is the
/// violation.
pub fn separate_cycle_mip(g: &Graph, p: &FractionalPoint) -> Result<Option<CutInequality>> {
    let n = g.n();
    let m = g.m();
    if n < 3 || m < 3 {
        return Ok(None);
    }
    let big_m = n as f64;
    let mut spec = ModelSpec::new(Sense::Max);
    let x: Vec<usize> = (0..n)
        .map(|v| spec.add_binary(format!("x{v}"), p.vertex(v)))
        .collect();
    let y: Vec<usize> = (0..m)
        .map(|e| spec.add_binary(format!("y{e}"), p.edge(g, e)))
        .collect();
    let s: Vec<usize> = (0..n)
        .map(|v| spec.add_binary(format!("s{v}"), 0.0))
        .collect();
    // arc 2e: u -> v, arc 2e + 1: v -> u
    let mut f = Vec::with_capacity(2 * m);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        f.push(spec.add_continuous(format!("f{u}_{v}"), 0.0, f64::INFINITY, 0.0)?);
        f.push(spec.add_continuous(format!("f{v}_{u}"), 0.0, f64::INFINITY, 0.0)?);
        let _ = e;
    }
    let u: Vec<usize> = (0..n)
        .map(|v| spec.add_var(format!("u{v}"), 0.0, f64::INFINITY, true, 0.0))
        .collect::<core::result::Result<_, _>>()?;
    let z = spec.add_var("z", 0.0, f64::INFINITY, true, -2.0)?;
    let t = spec.add_var("t", 1.0, 2.0, true, -1.0)?;
    spec.set_offset(1.0);
    for v in 0..n {
        let row = g
            .incident(v)
            .iter()
            .map(|&e| (y[e], 1.0))
            .chain([(x[v], -2.0)]);
        spec.add_constraint(row, Relation::Eq, 0.0)?;
    }
    spec.add_constraint(
        x.iter().map(|&xv| (xv, 1.0)).chain([(z, -3.0), (t, -1.0)]),
        Relation::Eq,
        0.0,
    )?;
    for v in 0..n {
        // x_v + outflow = u_v + inflow
        let mut row = vec![(x[v], 1.0), (u[v], -1.0)];
        for &e in g.incident(v) {
            let (a, _) = g.edge(e);
            let (out, inn) = if a == v {
                (f[2 * e], f[2 * e + 1])
            } else {
                (f[2 * e + 1], f[2 * e])
            };
            row.push((out, 1.0));
            row.push((inn, -1.0));
        }
        spec.add_constraint(row, Relation::Eq, 0.0)?;
    }
    spec.add_constraint(s.iter().map(|&sv| (sv, 1.0)), Relation::Eq, 1.0)?;
    for v in 0..n {
        spec.add_constraint([(u[v], 1.0), (s[v], -big_m)], Relation::Le, 0.0)?;
    }
    for e in 0..m {
        spec.add_constraint([(f[2 * e], 1.0), (y[e], -big_m)], Relation::Le, 0.0)?;
        spec.add_constraint([(f[2 * e + 1], 1.0), (y[e], -big_m)], Relation::Le, 0.0)?;
    }
    let sol = mp::solve_mip(&spec)?;
    if sol.status != Status::Optimal || sol.objective <= VIOLATION_EPS {
        return Ok(None);
    }
    let chosen: Vec<usize> = (0..m).filter(|&e| sol.primal[y[e]] > 0.5).collect();
    let cycle = trace_cycle(g, &chosen).ok_or_else(|| {
        Error::Solver(mp::MpError::Numerical(
            "cycle model returned a non-cycle".into(),
        ))
    })?;
    let cut = cycle_cut(g, &canonical(&cycle))?;
    Ok(Some(cut))
}

/// Orders the edge set of a single simple cycle; `None` if it is not one.
fn trace_cycle(g: &Graph, edges: &[usize]) -> Option<Vec<usize>> {
    if edges.len() < 3 {
        return None;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for &e in edges {
        let (u, v) = g.edge(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    if adj.iter().any(|a| !a.is_empty() && a.len() != 2) {
        return None;
    }
    let start = g.edge(edges[0]).0;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adj[start][0];
    while cur != start {
        cycle.push(cur);
        let next = if adj[cur][0] == prev {
            adj[cur][1]
        } else {
            adj[cur][0]
        };
        prev = cur;
        cur = next;
    }
    (cycle.len() == edges.len()).then_some(cycle)
}

/// Most violated cycle inequality, solved exactly.
///
/// For a point satisfying the basic system, three times the slack
/// `sum_C (2/3 - c_v - w_e)` splits into nonnegative terms: the star slack
/// `1 - c_v - w_in - w_out` at each cycle vertex and the edge slack
/// `1 - c_u - c_v - w_e` at each cycle edge. Rooting each cycle at its
/// smallest vertex, a depth-first search extends simple paths and prunes with
/// the cheapest closed-walk completion (Dijkstra on arc states with length
/// mod 3), which never overestimates the remaining slack.
pub fn separate_cycle_exact(g: &Graph, p: &FractionalPoint) -> Result<Option<CutInequality>> {
    match CycleSearch::new(g, p) {
        Some(mut search) => match search.run()? {
            Some(best) => Ok(best.map(|(_, c)| c)),
            None => separate_cycle_mip(g, p),
        },
        None => separate_cycle_mip(g, p),
    }
}

/// Shortest-path heuristic first; the exact backend only when it finds nothing.
pub fn separate_cycle(
    g: &Graph,
    p: &FractionalPoint,
    backend: CycleBackend,
) -> Result<Option<CutInequality>> {
    if let Some(cut) = separate_cycle_sp(g, p)? {
        return Ok(Some(cut));
    }
    match backend {
        CycleBackend::Combinatorial => separate_cycle_exact(g, p),
        CycleBackend::Mip => separate_cycle_mip(g, p),
    }
}

struct CycleSearch<'a> {
    g: &'a Graph,
    p: &'a FractionalPoint,
    // arc 2e + d: d = 0 is u -> v (u < v), d = 1 is v -> u
    edge_slack: Vec<f64>,
    // arcs leaving each vertex
    out_arcs: Vec<Vec<usize>>,
    // dist[class - 1][3 * arc + residue]
    dist: [Vec<f64>; 2],
    on_path: Vec<bool>,
    path: Vec<usize>,
    best: Option<(f64, CutInequality)>,
    expansions: usize,
}

impl<'a> CycleSearch<'a> {
    fn new(g: &'a Graph, p: &'a FractionalPoint) -> Option<Self> {
        let edge_slack: Vec<f64> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| 1.0 - p.vertex(u) - p.vertex(v) - p.edge(g, e))
            .collect();
        if edge_slack.iter().any(|&s| s < -1e-9) {
            return None;
        }
        for v in 0..g.n() {
            let star: f64 = p.vertex(v) + g.incident(v).iter().map(|&e| p.edge(g, e)).sum::<f64>();
            if star > 1.0 + 1e-9 {
                return None;
            }
        }
        let mut out_arcs = vec![Vec::new(); g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            out_arcs[u].push(2 * e);
            out_arcs[v].push(2 * e + 1);
        }
        let arcs = 2 * g.m();
        Some(CycleSearch {
            g,
            p,
            edge_slack,
            out_arcs,
            dist: [vec![0.0; 3 * arcs], vec![0.0; 3 * arcs]],
            on_path: vec![false; g.n()],
            path: Vec::new(),
            best: None,
            expansions: 0,
        })
    }

    fn tail(&self, a: usize) -> usize {
        let (u, v) = self.g.edge(a / 2);
        if a.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    fn head(&self, a: usize) -> usize {
        let (u, v) = self.g.edge(a / 2);
        if a.is_multiple_of(2) {
            v
        } else {
            u
        }
    }

    /// Star slack at the vertex between arcs `a` (in) and `b` (out), clamped at 0.
    fn star(&self, a: usize, b: usize) -> f64 {
        let v = self.head(a);
        (1.0 - self.p.vertex(v) - self.p.edge(self.g, a / 2) - self.p.edge(self.g, b / 2)).max(0.0)
    }

    fn transition(&self, a: usize, b: usize) -> f64 {
        self.star(a, b) + self.edge_slack[b / 2].max(0.0)
    }

    /// Cheapest completion from every arc state back to `root`, per class.
    fn completion_bounds(&mut self, root: usize) {
        let g = self.g;
        let arcs = 2 * g.m();
        for class in 1..=2usize {
            let mut dist = core::mem::take(&mut self.dist[class - 1]);
            dist.iter_mut().for_each(|d| *d = f64::INFINITY);
            let mut heap = BinaryHeap::new();
            for a in 0..arcs {
                let t = self.tail(a);
                if self.head(a) == root && t > root {
                    dist[3 * a + class] = 0.0;
                    heap.push(Reverse(Item(0.0, 3 * a + class)));
                }
            }
            while let Some(Reverse(Item(d, state))) = heap.pop() {
                if d > dist[state] {
                    continue;
                }
                let (b, rho) = (state / 3, state % 3);
                // predecessors a = (x -> v) with v = tail(b), never passing the root
                let v = self.tail(b);
                if v == root {
                    continue;
                }
                let w = self.head(b);
                let prev = (rho + 2) % 3;
                for &e in g.incident(v) {
                    let (p0, p1) = g.edge(e);
                    let (x, a) = if p0 == v {
                        (p1, 2 * e + 1)
                    } else {
                        (p0, 2 * e)
                    };
                    if x == w || x < root {
                        continue;
                    }
                    let nd = d + self.transition(a, b);
                    let s = 3 * a + prev;
                    if nd < dist[s] {
                        dist[s] = nd;
                        heap.push(Reverse(Item(nd, s)));
                    }
                }
            }
            self.dist[class - 1] = dist;
        }
    }

    /// `None` when the budget ran out.
    fn run(&mut self) -> Result<Option<Option<(f64, CutInequality)>>> {
        let g = self.g;
        for root in 0..g.n() {
            if g.degree(root) < 2 {
                continue;
            }
            self.completion_bounds(root);
            let firsts = self.out_arcs[root].clone();
            for a in firsts {
                let v1 = self.head(a);
                if v1 < root {
                    continue;
                }
                self.path.clear();
                self.path.push(root);
                self.path.push(v1);
                self.on_path[root] = true;
                self.on_path[v1] = true;
                let cost = self.edge_slack[a / 2].max(0.0);
                let ok = self.dfs(root, a, a, 1, cost)?;
                self.on_path[root] = false;
                self.on_path[v1] = false;
                if !ok {
                    return Ok(None);
                }
            }
        }
        Ok(Some(self.best.take()))
    }

    fn threshold(&self) -> f64 {
        // a candidate must beat the incumbent, in slack units (x3)
        3.0 * self
            .best
            .as_ref()
            .map_or(VIOLATION_EPS, |(v, _)| v.max(VIOLATION_EPS) - 1e-9)
    }

    fn dfs(&mut self, root: usize, first: usize, a: usize, len: usize, cost: f64) -> Result<bool> {
        self.expansions += 1;
        if self.expansions > SEARCH_BUDGET {
            return Ok(false);
        }
        let rho = len % 3;
        let potential = (1..=2usize)
            .map(|class| {
                let rhs3 = if class == 1 { 2.0 } else { 1.0 };
                rhs3 - (cost + self.dist[class - 1][3 * a + rho])
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if potential <= self.threshold() {
            return Ok(true);
        }
        let g = self.g;
        let v = self.head(a);
        let arcs = self.out_arcs[v].clone();
        for b in arcs {
            let w = self.head(b);
            if w == root {
                // close the cycle once, in the direction with the smaller second vertex
                if len >= 2 && self.path[1] < v {
                    let k = len + 1;
                    if !k.is_multiple_of(3) {
                        let closing = cost + self.transition(a, b) + self.star(b, first);
                        let rhs3 = if k % 3 == 1 { 2.0 } else { 1.0 };
                        if rhs3 - closing > self.threshold() - 1e-9 {
                            let cycle = self.path.clone();
                            self.best = offer(g, self.p, self.best.take(), &cycle)?;
                        }
                    }
                }
                continue;
            }
            if w < root || self.on_path[w] {
                continue;
            }
            let next = cost + self.transition(a, b);
            self.on_path[w] = true;
            self.path.push(w);
            let ok = self.dfs(root, first, b, len + 1, next)?;
            self.path.pop();
            self.on_path[w] = false;
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
