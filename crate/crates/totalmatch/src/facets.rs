//! The polytope battery: dimension checks and facet verdicts on small
//! graphs, each with its expected outcome.

use std::fmt;

use totalmatch_core::graph::{named_graph, random_gnp, NamedGraph};
use totalmatch_core::polytope::{check_inequality, hosts, polytope_dimension, InequalityCheck};
use totalmatch_core::separation::{
    cycle_cut, edge_triangle_cut, even_clique_cut, nonnegativity_cut, odd_clique_cut,
    vertex_clique_cut, vertex_star_cut, CutInequality,
};
use totalmatch_core::Graph;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    /// Dimension equals `n + m`.
    FullDimension,
    Facet,
    ValidNotFacet,
    Invalid,
    /// Reported without an expectation.
    Observe,
}

#[derive(Debug, Clone)]
pub enum Probe {
    Dimension,
    Inequality(CutInequality),
}

#[derive(Debug, Clone)]
pub struct BatteryItem {
    pub label: String,
    pub graph: Graph,
    pub probe: Probe,
    pub expect: Expect,
}

#[derive(Debug, Clone)]
pub enum Finding {
    Dimension(usize),
    Inequality(InequalityCheck),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub label: String,
    pub cut: Option<String>,
    pub finding: Finding,
    pub expect: Expect,
    /// `None` for observations.
    pub passed: Option<bool>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.label)?;
        if let Some(c) = &self.cut {
            writeln!(f, "cut: {c}")?;
        }
        match &self.finding {
            Finding::Dimension(d) => writeln!(f, "dimension: {d}")?,
            Finding::Inequality(r) => writeln!(f, "{r}")?,
        }
        let verdict = match self.passed {
            Some(true) => "ok",
            Some(false) => "FAILED",
            None => "observed",
        };
        write!(f, "expected: {:?} -> {verdict}", self.expect)
    }
}

pub fn run_item(item: &BatteryItem) -> Result<Outcome> {
    let (finding, cut) = match &item.probe {
        Probe::Dimension => (Finding::Dimension(polytope_dimension(&item.graph)?), None),
        Probe::Inequality(c) => (
            Finding::Inequality(check_inequality(&item.graph, c)?),
            Some(c.to_string()),
        ),
    };
    let passed = match (&finding, item.expect) {
        (_, Expect::Observe) => None,
        (Finding::Dimension(d), Expect::FullDimension) => Some(*d == item.graph.num_elements()),
        (Finding::Inequality(r), Expect::Facet) => Some(r.valid && r.is_facet),
        (Finding::Inequality(r), Expect::ValidNotFacet) => Some(r.valid && !r.is_facet),
        (Finding::Inequality(r), Expect::Invalid) => Some(!r.valid),
        _ => Some(false),
    };
    Ok(Outcome {
        label: item.label.clone(),
        cut,
        finding,
        expect: item.expect,
        passed,
    })
}

fn named(name: NamedGraph) -> Graph {
    named_graph(&name).expect("built-in graph")
}

fn item(
    label: impl Into<String>,
    graph: &Graph,
    cut: CutInequality,
    expect: Expect,
) -> BatteryItem {
    BatteryItem {
        label: label.into(),
        graph: graph.clone(),
        probe: Probe::Inequality(cut),
        expect,
    }
}

/// Random graphs with `n + m <= 14` for the dimension checks.
pub fn dimension_graphs(count: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let n = 2 + (seed % 6) as usize;
        let g = random_gnp(n, 0.5, seed).expect("valid parameters");
        if g.num_elements() <= 14 {
            out.push((format!("gnp-{n}-0.5-s{seed}"), g));
        }
        seed += 1;
    }
    out
}

pub fn default_battery() -> Vec<BatteryItem> {
    let mut items = Vec::new();
    for (label, g) in dimension_graphs(20) {
        items.push(BatteryItem {
            label: format!("dimension {label}"),
            graph: g,
            probe: Probe::Dimension,
            expect: Expect::FullDimension,
        });
    }

    let basics = [
        ("cycle(5)", named(NamedGraph::Cycle(5))),
        ("complete(4)", named(NamedGraph::Complete(4))),
        ("wheel(4)", named(NamedGraph::Wheel(4))),
        ("triangle host", hosts::triangle_host()),
        ("c4 host", hosts::c4_host()),
        ("k4 host", hosts::k4_host()),
    ];
    for (name, g) in &basics {
        for v in 0..g.n() {
            items.push(item(
                format!("{name} star {v}"),
                g,
                vertex_star_cut(g, v).expect("vertex"),
                Expect::Facet,
            ));
        }
        for e in 0..g.m() {
            let cut = edge_triangle_cut(g, e).expect("edge");
            items.push(item(format!("{name} edge {e}"), g, cut, Expect::Facet));
        }
        for i in 0..g.num_elements() {
            let cut = nonnegativity_cut(g, i).expect("element");
            items.push(item(
                format!("{name} nonnegativity {i}"),
                g,
                cut,
                Expect::Facet,
            ));
        }
    }

    let th = hosts::triangle_host();
    items.push(item(
        "vertex-clique K3 in host",
        &th,
        vertex_clique_cut(&th, &[0, 1, 2]).expect("clique"),
        Expect::Facet,
    ));
    let k5 = named(NamedGraph::Complete(5));
    items.push(item(
        "vertex-clique K5",
        &k5,
        vertex_clique_cut(&k5, &[0, 1, 2, 3, 4]).expect("clique"),
        Expect::Facet,
    ));
    let kh = hosts::k4_host();
    items.push(item(
        "vertex-clique K4 in host",
        &kh,
        vertex_clique_cut(&kh, &[0, 1, 2, 3]).expect("clique"),
        Expect::Facet,
    ));
    let c5 = named(NamedGraph::Cycle(5));
    items.push(item(
        "vertex-clique on an edge of C5",
        &c5,
        vertex_clique_cut(&c5, &[0, 1]).expect("clique"),
        Expect::ValidNotFacet,
    ));

    for k in [4, 5, 7, 8] {
        let g = named(NamedGraph::Cycle(k));
        let cut = cycle_cut(&g, &(0..k).collect::<Vec<_>>()).expect("cycle");
        items.push(item(format!("cycle C{k}"), &g, cut, Expect::Facet));
    }
    let ch = hosts::c4_host();
    items.push(item(
        "cycle C4 in host",
        &ch,
        cycle_cut(&ch, &[0, 1, 2, 3]).expect("cycle"),
        Expect::Facet,
    ));
    for k in [6, 9] {
        let g = named(NamedGraph::Cycle(k));
        let cut = cycle_cut(&g, &(0..k).collect::<Vec<_>>()).expect("cycle");
        items.push(item(format!("cycle C{k}"), &g, cut, Expect::Observe));
    }

    for h in [4, 6] {
        let g = named(NamedGraph::Complete(h));
        let cut = even_clique_cut(&g, &(0..h).collect::<Vec<_>>()).expect("clique");
        items.push(item(format!("even-clique K{h}"), &g, cut, Expect::Facet));
    }
    items.push(item(
        "even-clique K4 in host",
        &kh,
        even_clique_cut(&kh, &[0, 1, 2, 3]).expect("clique"),
        Expect::Facet,
    ));
    items.push(item(
        "odd-clique K5",
        &k5,
        odd_clique_cut(&k5, &[0, 1, 2, 3, 4]).expect("clique"),
        Expect::ValidNotFacet,
    ));
    items
}

/// Checks user-supplied cuts on one graph, without expectations.
pub fn observe_cuts(label: &str, g: &Graph, cuts: &[CutInequality]) -> Vec<BatteryItem> {
    cuts.iter()
        .enumerate()
        .map(|(i, c)| {
            item(
                format!("{label} cut {}", i + 1),
                g,
                c.clone(),
                Expect::Observe,
            )
        })
        .collect()
}
