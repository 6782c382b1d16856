use alloc::vec;

use proptest::prelude::*;

use super::*;
use crate::graph::{named_graph, random_gnp, NamedGraph};
use crate::matching::{basic_lp_bound, is_total_matching, mwtmp_bruteforce, BRUTEFORCE_CAP};

fn named(name: NamedGraph) -> Graph {
    named_graph(&name).unwrap()
}

#[test]
fn no_families_gives_basic_bound() {
    let g = named(NamedGraph::Petersen);
    let w = WeightVector::unit(&g);
    let r = run_cut_loop(&g, &w, &CutLoopConfig::with_families(&[])).unwrap();
    assert!((r.final_bound - basic_lp_bound(&g, &w).unwrap()).abs() < 1e-9);
    assert_eq!((r.rounds, r.cuts.len(), r.bounds.len()), (0, 0, 1));
}

#[test]
fn c5_cycle_cut_closes_the_gap() {
    let g = named(NamedGraph::Cycle(5));
    let mut cfg = CutLoopConfig::with_families(&[Family::Cycle]);
    cfg.compute_nu_t = true;
    let r = run_cut_loop(&g, &WeightVector::unit(&g), &cfg).unwrap();
    assert!((r.bounds[0] - 10.0 / 3.0).abs() < 1e-9);
    assert!((r.final_bound - 3.0).abs() < 1e-9);
    assert_eq!(r.cuts_of(Family::Cycle), 1);
    assert_eq!(r.nu_t, Some(3.0));
    assert!(r.gap.unwrap().abs() < 1e-6);
}

#[test]
fn k4_even_clique() {
    let g = named(NamedGraph::Complete(4));
    let r = run_cut_loop(
        &g,
        &WeightVector::unit(&g),
        &CutLoopConfig::with_families(&[Family::EvenClique]),
    )
    .unwrap();
    assert!((r.final_bound - 2.0).abs() < 1e-9);
    assert!(r.cuts_of(Family::EvenClique) >= 1);
}

#[test]
fn rejects_bad_config() {
    let g = named(NamedGraph::Cycle(4));
    let w = WeightVector::unit(&g);
    let mut cfg = CutLoopConfig::default();
    cfg.max_rounds = 0;
    assert!(matches!(
        run_cut_loop(&g, &w, &cfg),
        Err(Error::InvalidParameter(_))
    ));
    let cfg = CutLoopConfig::with_families(&[Family::OddClique]);
    assert!(matches!(
        run_cut_loop(&g, &w, &cfg),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn deterministic() {
    let g = random_gnp(14, 0.35, 5).unwrap();
    let w = WeightVector::unit(&g);
    let a = run_cut_loop(&g, &w, &CutLoopConfig::default()).unwrap();
    let b = run_cut_loop(&g, &w, &CutLoopConfig::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn total_matching_number_named() {
    for (name, expected) in [
        (NamedGraph::Cycle(5), 3),
        (NamedGraph::Cycle(9), 6),
        (NamedGraph::Complete(7), 4),
        (NamedGraph::Star(5), 5),
    ] {
        let g = named(name);
        let t = total_matching_number(&g).unwrap();
        assert_eq!(t.nu_t, expected, "{name}");
        assert!(is_total_matching(&g, t.witness.set()).unwrap());
        assert_eq!(t.witness.len(), t.nu_t);
    }
    let pet = named(NamedGraph::Petersen);
    let t = total_matching_number(&pet).unwrap();
    assert_eq!((t.nu, t.alpha), (5, 4));
    assert_eq!(
        t.nu_t as f64,
        mwtmp_exact(&pet, &WeightVector::unit(&pet)).unwrap().0
    );
}

#[test]
fn total_matching_number_matches_exact_model() {
    for seed in 0..30 {
        let g = random_gnp(16, 0.2 + 0.02 * (seed % 10) as f64, seed).unwrap();
        let t = total_matching_number(&g).unwrap();
        let exact = mwtmp_exact(&g, &WeightVector::unit(&g)).unwrap().0;
        assert_eq!(t.nu_t as f64, exact, "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bounds_are_monotone_and_safe(seed in 0u64..100_000, n in 2usize..8, p in 0.3f64..0.8) {
        let g = random_gnp(n, p, seed).unwrap();
        prop_assume!(g.num_elements() <= BRUTEFORCE_CAP);
        let w = WeightVector::unit(&g);
        let exact = mwtmp_bruteforce(&g, &w).unwrap().0;
        for families in [vec![Family::VertexClique], vec![Family::Cycle], vec![Family::EvenClique], SEPARABLE.to_vec()] {
            let r = run_cut_loop(&g, &w, &CutLoopConfig::with_families(&families)).unwrap();
            for pair in r.bounds.windows(2) {
                prop_assert!(pair[1] <= pair[0] + 1e-6);
            }
            prop_assert!(r.final_bound >= exact - 1e-6);
            prop_assert_eq!(r.rounds + 1, r.bounds.len());
        }
        prop_assert_eq!(total_matching_number(&g).unwrap().nu_t as f64, exact);
    }
}
