//! Golden matrix for the command-line interface: every subcommand driven
//! through the real binary, with exit codes checked against the contract
//! (0 = property holds, 1 = property fails, 2 = usage/parse error) and
//! stdout checked for byte stability where it matters.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_tempex"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// A two-vertex star with its only edge alive at both steps; the canonical
/// solvable instance.
const SOLVABLE_STAR: &str =
    "temporal-graph v1\nvertices 2\nsteps 2\nstart 0\nedge 1 0 1\nedge 2 0 1\n";

/// Vertex 2 never gets an edge, so exploration is infeasible.
const UNREACHABLE: &str = "temporal-graph v1\nvertices 3\nsteps 1\nstart 0\nedge 1 0 1\n";

/// A temporal triangle (not a star).
const TRIANGLE: &str =
    "temporal-graph v1\nvertices 3\nsteps 1\nstart 0\nedge 1 0 1\nedge 1 0 2\nedge 1 1 2\n";

#[test]
fn gen_is_deterministic_and_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.tg");
    let out_b = dir.path().join("b.tg");
    let gen = |out: &Path| {
        run(&[
            "gen", "--mode", "star", "--n", "2", "--L", "2", "--seed", "7", "--out",
            path_str(out),
        ])
    };
    assert_eq!(code(&gen(&out_a)), 0);
    assert_eq!(code(&gen(&out_b)), 0);
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
    let text = std::fs::read_to_string(&out_a).unwrap();
    assert!(text.starts_with("temporal-graph v1\n"));
}

#[test]
fn gen_connected_snapshots_solve_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.tg");
    let gen = run(&[
        "gen", "--mode", "connected", "--n", "4", "--L", "3", "--seed", "1", "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&gen), 0);
    // Connected-per-step instances with enough steps explore fine.
    let solve = run(&["solve", "--in", path_str(&out), "--mode", "explore"]);
    assert_eq!(code(&solve), 0);
    assert!(stdout(&solve).starts_with("FEASIBLE"));
}

#[test]
fn gen_without_n_is_a_usage_error() {
    let out = run(&["gen", "--mode", "star", "--L", "2", "--seed", "1", "--out", "/tmp/x.tg"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reduce_prints_the_size_law_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.tg");
    std::fs::write(&star, "temporal-graph v1\nvertices 2\nsteps 1\nstart 0\nedge 1 0 1\n")
        .unwrap();
    let reduced = dir.path().join("reduced.tg");
    let out = run(&[
        "reduce", "--in", path_str(&star), "--variant", "2", "--out", path_str(&reduced),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n'=8 Q=5 horizon=7\n");

    let out3 = run(&[
        "reduce", "--in", path_str(&star), "--variant", "3", "--out", path_str(&reduced),
    ]);
    assert_eq!(stdout(&out3), "n'=8 Q=5 horizon=8\n");
}

#[test]
fn reduce_rejects_non_star_input() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.tg");
    std::fs::write(&tri, TRIANGLE).unwrap();
    let out = run(&["reduce", "--in", path_str(&tri), "--variant", "2", "--out", "/tmp/r.tg"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn solve_reports_feasible_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.tg");
    std::fs::write(&star, SOLVABLE_STAR).unwrap();
    let out = run(&[
        "solve", "--in", path_str(&star), "--mode", "rtb", "--horizon", "2", "--witness",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "FEASIBLE min_time=2\nwalk 0 1 0\n");
}

#[test]
fn solve_reports_infeasible_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("u.tg");
    std::fs::write(&f, UNREACHABLE).unwrap();
    let out = run(&["solve", "--in", path_str(&f), "--mode", "explore"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "INFEASIBLE\n");
}

#[test]
fn solve_witness_verifies_through_the_verify_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.tg");
    std::fs::write(&star, SOLVABLE_STAR).unwrap();
    let solved = run(&["solve", "--in", path_str(&star), "--mode", "rtb", "--witness"]);
    let walk_line = stdout(&solved).lines().nth(1).unwrap().to_string();
    let walk = dir.path().join("w.txt");
    std::fs::write(&walk, format!("{}\n", walk_line)).unwrap();
    let verify = run(&[
        "verify", "--in", path_str(&star), "--walk", path_str(&walk), "--mode", "rtb",
    ]);
    assert_eq!(code(&verify), 0);
    assert!(stdout(&verify).contains("goal: met"));
}

#[test]
fn verify_flags_illegal_walks() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("u.tg");
    std::fs::write(&f, "temporal-graph v1\nvertices 2\nsteps 1\nstart 0\n").unwrap();
    let walk = dir.path().join("w.txt");
    std::fs::write(&walk, "walk 0 1\n").unwrap();
    let out = run(&[
        "verify", "--in", path_str(&f), "--walk", path_str(&walk), "--mode", "explore",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("violation: step 1: no edge {0,1} at step 1"));
}

#[test]
fn verify_with_unparseable_walk_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("u.tg");
    std::fs::write(&f, SOLVABLE_STAR).unwrap();
    let walk = dir.path().join("w.txt");
    std::fs::write(&walk, "wandering 0 1\n").unwrap();
    let out = run(&[
        "verify", "--in", path_str(&f), "--walk", path_str(&walk), "--mode", "rtb",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn pathwidth_builds_validates_and_computes_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.tg");
    std::fs::write(&star, "temporal-graph v1\nvertices 2\nsteps 1\nstart 0\nedge 1 0 1\n")
        .unwrap();
    let reduced = dir.path().join("reduced.tg");
    run(&["reduce", "--in", path_str(&star), "--variant", "2", "--out", path_str(&reduced)]);

    // Build mode: decomposition to a file, summary on stdout.
    let dec = dir.path().join("dec.txt");
    let build = run(&["pathwidth", "--in", path_str(&reduced), "--out", path_str(&dec)]);
    assert_eq!(code(&build), 0);
    assert_eq!(stdout(&build), "width=2 valid\n");

    // Validate mode consumes the emitted file.
    let check = run(&[
        "pathwidth", "--in", path_str(&reduced), "--decomposition", path_str(&dec),
    ]);
    assert_eq!(code(&check), 0);
    assert_eq!(stdout(&check), "width=2 valid\n");

    // Exact oracle agrees (the reduced instance has 8 vertices).
    let exact = run(&["pathwidth", "--in", path_str(&reduced), "--exact"]);
    assert_eq!(code(&exact), 0);
    assert_eq!(stdout(&exact), "pathwidth=2\n");
}

#[test]
fn pathwidth_rejects_bad_decompositions_and_oversized_exact() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.tg");
    std::fs::write(&tri, TRIANGLE).unwrap();
    let dec = dir.path().join("dec.txt");
    std::fs::write(&dec, "0 1\n1 2\n").unwrap();
    let out = run(&["pathwidth", "--in", path_str(&tri), "--decomposition", path_str(&dec)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("violation: edge {0,2}"));
    assert!(stdout(&out).contains("width=1 invalid"));

    // 22 vertices, edgeless: over the exact-oracle cap.
    let big = dir.path().join("big.tg");
    std::fs::write(&big, "temporal-graph v1\nvertices 22\nsteps 0\nstart 0\n").unwrap();
    let out = run(&["pathwidth", "--in", path_str(&big), "--exact"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn pathwidth_build_requires_reduction_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.tg");
    std::fs::write(&tri, TRIANGLE).unwrap();
    let out = run(&["pathwidth", "--in", path_str(&tri)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn experiment_small_run_holds_and_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let json_a = dir.path().join("a.json");
    let json_b = dir.path().join("b.json");
    let base = [
        "experiment", "--trials", "25", "--n-min", "2", "--n-max", "2", "--L-min", "1",
        "--L-max", "2", "--seed", "11",
    ];
    let mut args_a: Vec<&str> = base.to_vec();
    args_a.extend(["--json", path_str(&json_a)]);
    let mut args_b: Vec<&str> = base.to_vec();
    args_b.extend(["--json", path_str(&json_b)]);
    let out_a = run(&args_a);
    let out_b = run(&args_b);
    assert_eq!(code(&out_a), 0);
    assert_eq!(stdout(&out_a), stdout(&out_b));
    assert_eq!(
        std::fs::read(&json_a).unwrap(),
        std::fs::read(&json_b).unwrap()
    );
    let json = std::fs::read_to_string(&json_a).unwrap();
    assert!(json.contains("\"generator\": \"chacha8\""));

    // CSV: header plus one row per trial (timing column varies, so only the
    // shape is pinned).
    let csv = dir.path().join("a.csv");
    let mut args_csv: Vec<&str> = base.to_vec();
    args_csv.extend(["--csv", path_str(&csv)]);
    assert_eq!(code(&run(&args_csv)), 0);
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(
        lines.next(),
        Some("seed,n,L,star_rtb,reduced_ok,match,us")
    );
    assert_eq!(lines.count(), 25);
}

#[test]
fn experiment_zero_trials_exits_zero() {
    let out = run(&[
        "experiment", "--trials", "0", "--n-min", "2", "--n-max", "2", "--L-min", "1",
        "--L-max", "1", "--seed", "1",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn experiment_detects_injected_faults() {
    let out = run(&[
        "experiment", "--trials", "20", "--n-min", "2", "--n-max", "2", "--L-min", "2",
        "--L-max", "2", "--seed", "3", "--inject-fault", "short-path",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("mismatch: seed="));
}

#[test]
fn experiment_over_the_cap_is_rejected_before_running() {
    let out = run(&[
        "experiment", "--trials", "5", "--n-min", "10", "--n-max", "10", "--L-min", "10",
        "--L-max", "10", "--seed", "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_instance_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tg");
    std::fs::write(&bad, "temporal-graph v1\nvertices 2\nsteps 1\nstart 0\nedge 0 0 1\n")
        .unwrap();
    let out = run(&["solve", "--in", path_str(&bad), "--mode", "explore"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("step index 0 out of range"));
}
