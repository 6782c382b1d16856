use proptest::prelude::*;

use totalmatch::io::{
    load_graph, parse_coloring, parse_cuts, parse_dimacs, parse_graph6, parse_weights, save_graph,
    write_coloring, write_cuts, write_dimacs, write_graph6, write_weights,
};
use totalmatch::Error;
use totalmatch_core::coloring::greedy_total_coloring;
use totalmatch_core::graph::{named_graph, random_gnp, NamedGraph};
use totalmatch_core::matching::WeightVector;
use totalmatch_core::separation::{cycle_cut, vertex_clique_cut, vertex_star_cut};
use totalmatch_core::Graph;

fn line_of(e: Error) -> usize {
    match e {
        Error::Parse { line, .. } => line,
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn dimacs_round_trip() {
    let g = named_graph(&NamedGraph::Petersen).unwrap();
    let text = write_dimacs(&g, Some("petersen"));
    assert!(text.starts_with("c petersen\np edge 10 15\n"));
    assert_eq!(parse_dimacs(&text).unwrap(), g);
}

#[test]
fn dimacs_accepts_col_header_and_comments() {
    let g = parse_dimacs("c triangle\n\np col 3 3\ne 1 2\ne 2 3\nc mid\ne 1 3\n").unwrap();
    assert_eq!((g.n(), g.m()), (3, 3));
}

#[test]
fn dimacs_errors_carry_line_numbers() {
    let cases = [
        ("p edge 3 1\ne 1 4\n", 2),
        ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
        ("p edge 3 1\ne 2 2\n", 2),
        ("c x\np edge 3 2\ne 1 2\n", 2),
        ("p edge 3 1\np edge 3 1\n", 2),
        ("e 1 2\n", 1),
        ("p edge 3 1\nx 1 2\n", 2),
        ("p edge three 1\n", 1),
    ];
    for (text, line) in cases {
        assert_eq!(line_of(parse_dimacs(text).unwrap_err()), line, "{text:?}");
    }
}

// expected encodings and edge lists produced with networkx
#[test]
fn graph6_matches_reference_encodings() {
    let star = parse_graph6("D?{").unwrap();
    assert_eq!(star.n(), 5);
    assert_eq!(star.edges(), &[(0, 4), (1, 4), (2, 4), (3, 4)]);

    let p = parse_graph6("IheA@GUAo").unwrap();
    let expected = [
        (0, 1),
        (0, 4),
        (0, 5),
        (1, 2),
        (1, 6),
        (2, 3),
        (2, 7),
        (3, 4),
        (3, 8),
        (4, 9),
        (5, 7),
        (5, 8),
        (6, 8),
        (6, 9),
        (7, 9),
    ];
    assert_eq!(p.edges(), &expected);
    assert_eq!(write_graph6(&p), "IheA@GUAo");

    assert_eq!(parse_graph6("Bw").unwrap().m(), 3);
    assert_eq!(parse_graph6("@").unwrap().n(), 1);
    assert_eq!(parse_graph6("?").unwrap().n(), 0);
    assert_eq!(parse_graph6(">>graph6<<Bw").unwrap().m(), 3);

    let k70 = named_graph(&NamedGraph::Complete(70)).unwrap();
    let s = write_graph6(&k70);
    assert!(s.starts_with("~?@E~~~~"));
    assert_eq!(s.len(), 407);
    assert_eq!(parse_graph6(&s).unwrap().m(), 70 * 69 / 2);
}

#[test]
fn graph6_rejects_bad_input() {
    assert!(parse_graph6("").is_err());
    assert!(parse_graph6("D?").is_err());
    assert!(parse_graph6("D?{{").is_err());
    assert!(parse_graph6("D?\x7f").is_err());
}

#[test]
fn files_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let g = named_graph(&NamedGraph::Chvatal).unwrap();
    for name in ["a.dimacs", "a.col", "a.g6", "a.graph6"] {
        let path = dir.path().join(name);
        save_graph(&g, &path).unwrap();
        assert_eq!(load_graph(&path).unwrap(), g, "{name}");
    }
    let text = std::fs::read_to_string(dir.path().join("a.g6")).unwrap();
    assert_eq!(text.lines().count(), 1);
    match load_graph(dir.path().join("missing.dimacs")) {
        Err(Error::File { .. }) | Err(Error::Io(_)) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn weights_round_trip_and_defaults() {
    let g = named_graph(&NamedGraph::Cycle(4)).unwrap();
    let w = parse_weights(&g, "# partial\nv 0 2.5\ne 3 0.25\n").unwrap();
    assert_eq!(w.layout(), vec![2.5, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.25]);
    assert_eq!(parse_weights(&g, &write_weights(&g, &w)).unwrap(), w);
    assert_eq!(line_of(parse_weights(&g, "v 0 1\nv 9 1\n").unwrap_err()), 2);
    assert_eq!(line_of(parse_weights(&g, "e 0 abc\n").unwrap_err()), 1);
    assert_eq!(line_of(parse_weights(&g, "\nq 0 1\n").unwrap_err()), 2);
}

#[test]
fn coloring_round_trip_and_checks() {
    let g = named_graph(&NamedGraph::Petersen).unwrap();
    let c = greedy_total_coloring(&g);
    let text = write_coloring(&g, &c);
    assert_eq!(parse_coloring(&g, &text).unwrap(), c);

    let missing: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert!(parse_coloring(&g, &missing).is_err());
    let twice = format!("{text}v 0 0\n");
    assert_eq!(
        line_of(parse_coloring(&g, &twice).unwrap_err()),
        g.num_elements() + 1
    );
    // vertices 0 and 1 are adjacent
    let clash: String = text
        .lines()
        .map(|l| match l {
            l if l.starts_with("v 0 ") || l.starts_with("v 1 ") => format!("{} 99\n", &l[..3]),
            l => format!("{l}\n"),
        })
        .collect();
    assert!(parse_coloring(&g, &clash).is_err());
}

#[test]
fn cuts_round_trip() {
    let g = named_graph(&NamedGraph::Wheel(5)).unwrap();
    let cuts = vec![
        cycle_cut(&g, &[0, 1, 2, 3, 4]).unwrap(),
        vertex_clique_cut(&g, &[0, 1, 5]).unwrap(),
        vertex_star_cut(&g, 5).unwrap(),
    ];
    let text = write_cuts(&cuts);
    assert_eq!(parse_cuts(&g, &text).unwrap(), cuts);
}

#[test]
fn cut_lines_are_checked_against_the_family() {
    let g = named_graph(&NamedGraph::Cycle(5)).unwrap();
    let cut = cycle_cut(&g, &[0, 1, 2, 3, 4]).unwrap();
    let good = write_cuts(std::slice::from_ref(&cut));
    // a different rhs is kept as given
    let loose = good.replacen(" 3 [", " 2 [", 1);
    assert_eq!(parse_cuts(&g, &loose).unwrap()[0].rhs, 2.0);
    // dropping an edge from the support breaks the family
    let broken = good.replacen("| 0 1 2 3 4]", "| 0 1 2 3]", 1);
    assert_eq!(
        line_of(parse_cuts(&g, &format!("# x\n{broken}")).unwrap_err()),
        2
    );
    assert!(parse_cuts(&g, "nonsense 1 [0 | ]\n").is_err());
    assert!(parse_cuts(&g, "cycle-2k3 3 0 1 2\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_formats_round_trip(n in 0usize..40, p in 0.0f64..1.0, seed in 0u64..1000) {
        let g = random_gnp(n, p, seed).unwrap();
        prop_assert_eq!(&parse_dimacs(&write_dimacs(&g, None)).unwrap(), &g);
        prop_assert_eq!(&parse_graph6(&write_graph6(&g)).unwrap(), &g);
    }

    #[test]
    fn weights_round_trip(seed in 0u64..1000, raw in proptest::collection::vec(-5.0f64..5.0, 30)) {
        let g: Graph = random_gnp(6, 0.5, seed).unwrap();
        let k = g.num_elements();
        let w = WeightVector::from_layout(&g, &raw[..k]).unwrap();
        prop_assert_eq!(parse_weights(&g, &write_weights(&g, &w)).unwrap(), w);
    }
}
