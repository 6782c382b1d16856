use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_totalmatch"))
        .args(args)
        .current_dir(dir)
        .env("TOTALMATCH_INSTANCES", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn coloring_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["coloring", "cycle(5)", "--no-runtime"], dir.path());
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "name,n,m,type,delta,chiT,LP,SCLP,iters,runtime\ncycle(5),5,5,2,2,4,3.0000,3.3333,8,\n"
    );
}

#[test]
fn empty_instance_list_gives_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["coloring"], dir.path());
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "name,n,m,type,delta,chiT,LP,SCLP,iters,runtime\n"
    );
    let o = run(&["matching", "--format", "markdown"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn missing_fixture_is_skipped_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["coloring", "no_such_graph", "petersen", "--no-exact"],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_such_graph"));
}

#[test]
fn two_sources_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["matching", "petersen", "--cubic", "8"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn tables_are_deterministic_without_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "matching",
        "--cubic",
        "14",
        "--seeds",
        "1..4",
        "--no-runtime",
        "--families",
        "all",
    ];
    let a = run(&args, dir.path());
    let b = run(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 4);
}

#[test]
fn aggregate_matching_over_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "matching",
            "--gnp",
            "10",
            "--p",
            "0.4",
            "--seeds",
            "0..3",
            "--aggregate",
            "--no-runtime",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    // header plus one averaged row per default family set
    assert_eq!(out.lines().count(), 5, "{out}");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.toml"),
        "instances = [\"cycle(5)\"]\nfamilies = [\"cycle\"]\nruntime = false\n",
    )
    .unwrap();
    let o = run(&["matching", "--config", "run.toml"], dir.path());
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().nth(1).unwrap(),
        "cycle(5):cycle,5,5,2,2,3,3.0000,0.00,1,1,"
    );
    fs::write(dir.path().join("bad.toml"), "colour = 3\n").unwrap();
    assert!(!run(&["matching", "--config", "bad.toml"], dir.path())
        .status
        .success());
}

#[test]
fn default_facet_battery_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["facets", "--quiet"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn corrupted_cut_is_reported_invalid() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("c5.cuts"),
        "cycle-2k3 2 [0 1 2 3 4 | 0 1 2 3 4]\n",
    )
    .unwrap();
    let o = run(
        &["facets", "--graph", "cycle(5)", "--cuts", "c5.cuts"],
        dir.path(),
    );
    let out = stdout(&o);
    assert!(out.contains("valid: false"), "{out}");

    fs::write(
        dir.path().join("ok.cuts"),
        "cycle-2k3 3 [0 1 2 3 4 | 0 1 2 3 4]\n",
    )
    .unwrap();
    let o = run(
        &["facets", "--graph", "cycle(5)", "--cuts", "ok.cuts"],
        dir.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("valid: true") && out.contains("facet: true"),
        "{out}"
    );
}

#[test]
fn matching_writes_cuts_that_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "matching",
            "cycle(5)",
            "--families",
            "cycle",
            "--cuts",
            "out",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let o = run(
        &[
            "facets",
            "--graph",
            "cycle(5)",
            "--cuts",
            "out/cycle_5_.cycle.cuts",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn gen_then_convert() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["gen", "--cubic", "10", "--seeds", "1,2", "--out", "g"],
        dir.path(),
    );
    assert!(o.status.success());
    let a = dir.path().join("g/cubic-10-s1.dimacs");
    assert!(a.exists() && dir.path().join("g/cubic-10-s2.dimacs").exists());

    assert!(
        run(&["convert", "g/cubic-10-s1.dimacs", "x.g6"], dir.path())
            .status
            .success()
    );
    assert!(run(&["convert", "x.g6", "y.dimacs"], dir.path())
        .status
        .success());
    let original = totalmatch::io::load_graph(&a).unwrap();
    let back = totalmatch::io::load_graph(dir.path().join("y.dimacs")).unwrap();
    // graph6 stores edges in its own order
    let sorted = |g: &totalmatch_core::Graph| {
        let mut e = g.edges().to_vec();
        e.sort_unstable();
        (g.n(), e)
    };
    assert_eq!(sorted(&original), sorted(&back));

    // generated files resolve as fixtures by name
    let o = run(
        &["coloring", "g/cubic-10-s1.dimacs", "--no-exact"],
        dir.path(),
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("cubic-10-s1"));
}

#[test]
fn lp_and_coloring_export() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "coloring",
            "petersen",
            "--export-lp",
            "lp",
            "--colorings",
            "col",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let lp = fs::read_to_string(dir.path().join("lp/petersen.lp")).unwrap();
    assert!(lp.contains("Subject To") || lp.contains("subject to"));
    let g =
        totalmatch_core::graph::named_graph(&totalmatch_core::graph::NamedGraph::Petersen).unwrap();
    let text = fs::read_to_string(dir.path().join("col/petersen.col.txt")).unwrap();
    let c = totalmatch::io::parse_coloring(&g, &text).unwrap();
    assert_eq!(c.num_colors(), 4);
}

#[test]
fn bad_input_file_fails_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.dimacs"), "p edge 3 1\ne 1 7\n").unwrap();
    let o = run(&["convert", "bad.dimacs", "out.g6"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
