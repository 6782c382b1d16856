use totalmatch_core::coloring::{
    assignment_lp, assignment_mip, covering_colgen, default_color_count, greedy_total_coloring,
};
use totalmatch_core::cutloop::{run_cut_loop, total_matching_number, CutLoopConfig, SEPARABLE};
use totalmatch_core::graph::{named_graph, random_cubic, random_gnp, NamedGraph};
use totalmatch_core::matching::{mwtmp_exact, WeightVector};
use totalmatch_core::polytope::{check_inequality, polytope_dimension};
use totalmatch_core::separation::cycle_cut;
use totalmatch_core::Graph;

fn named(name: NamedGraph) -> Graph {
    named_graph(&name).unwrap()
}

#[test]
fn small_named_bounds() {
    for (name, lp, sclp, chi) in [
        (NamedGraph::Cycle(5), 3.0, 10.0 / 3.0, 4),
        (NamedGraph::Petersen, 4.0, 4.0, 4),
        (NamedGraph::Chvatal, 5.0, 5.0, 5),
    ] {
        let g = named(name);
        let k = default_color_count(&g);
        assert!((assignment_lp(&g, k).unwrap() - lp).abs() < 1e-6, "{name}");
        assert!(
            (covering_colgen(&g).unwrap().value - sclp).abs() < 1e-6,
            "{name}"
        );
        let (c, coloring) = assignment_mip(&g, k).unwrap().unwrap();
        assert_eq!(c, chi, "{name}");
        assert_eq!(coloring.num_colors(), chi);
    }
}

#[test]
fn cut_loop_brackets_the_optimum() {
    for seed in 0..6 {
        let g = random_cubic(16, seed).unwrap();
        let exact = total_matching_number(&g).unwrap().nu_t as f64;
        let w = WeightVector::unit(&g);
        assert_eq!(mwtmp_exact(&g, &w).unwrap().0, exact);
        let basic = run_cut_loop(&g, &w, &CutLoopConfig::with_families(&[])).unwrap();
        let all = run_cut_loop(&g, &w, &CutLoopConfig::default()).unwrap();
        assert!(all.final_bound <= basic.final_bound + 1e-6);
        assert!(all.final_bound >= exact - 1e-6);
        assert!(all.bounds.windows(2).all(|b| b[1] <= b[0] + 1e-6));
        assert!(all.cuts.iter().all(|c| SEPARABLE.contains(&c.family)));
    }
}

#[test]
fn greedy_stays_within_the_trivial_bound() {
    for seed in 0..20 {
        let g = random_gnp(12, 0.4, seed).unwrap();
        let c = greedy_total_coloring(&g);
        assert!(c.num_colors() <= 2 * g.max_degree() + 1);
    }
}

#[test]
fn c5_cycle_cut_is_a_facet() {
    let g = named(NamedGraph::Cycle(5));
    assert_eq!(polytope_dimension(&g).unwrap(), 10);
    let r = check_inequality(&g, &cycle_cut(&g, &[0, 1, 2, 3, 4]).unwrap()).unwrap();
    assert!(r.valid && r.is_facet);
}
