use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qwmst_core::graph::{is_spanning_tree, read_graph, tree_weight};
use serde_json::Value;

fn qwmst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwmst"))
        .args(args)
        .env_remove("QWMST_SEED")
        .output()
        .expect("run qwmst")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = qwmst(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn hub_file(dir: &Path) -> PathBuf {
    let path = dir.join("hub.txt");
    std::fs::write(
        &path,
        "# hub\n4 6\n0 3 1\n1 3 2\n2 3 3\n0 1 10\n0 2 11\n1 2 12\n",
    )
    .unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data lines of a CSV (no metadata, no header).
fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn gen_is_deterministic_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let out = qwmst(&["gen", "--v", "4", "--wmin", "1", "--wmax", "20", "--seed", "7", "--out", s(p)]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let g = read_graph(&a).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));

    let out = qwmst(&["gen", "--v", "1", "--out", s(&dir.path().join("c.txt"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let status = Command::new(env!("CARGO_BIN_EXE_qwmst"))
        .args(["gen", "--v", "6", "--out", s(&a)])
        .env("QWMST_SEED", "99")
        .status()
        .unwrap();
    assert!(status.success());
    assert!(qwmst(&["gen", "--v", "6", "--seed", "99", "--out", s(&b)]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn solve_hub_graph() {
    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    let doc = ok_json(&["solve", s(&hub)]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["algorithm"], "quantum_kruskal");
    assert_eq!(doc["total_weight"], 6.0);
    assert_eq!(doc["tau"], 0.1);
    assert_eq!(doc["max_degree"], 3);
    assert_eq!(doc["qubit_count"], 2);

    let explicit = ok_json(&["solve", s(&hub), "--tau", "0.1"]);
    assert_eq!(explicit["tree"], doc["tree"]);

    // The tree reloads as a spanning tree and its weight recomputes.
    let g = read_graph(&hub).unwrap();
    let edges: Vec<(usize, usize)> = doc["tree"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize))
        .collect();
    assert!(is_spanning_tree(&g, &edges));
    assert_eq!(tree_weight(&g, &edges).unwrap(), 6.0);
}

#[test]
fn solve_heuristic_tau() {
    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    let doc = ok_json(&["solve", s(&hub), "--tau-heuristic", "--safety", "0.5"]);
    let expected = 0.5 * (4.0 / (std::f64::consts::PI * 2.0) + 0.1);
    assert!((doc["tau"].as_f64().unwrap() - expected).abs() < 1e-15);
    let out = qwmst(&["solve", s(&hub), "--tau", "0.1", "--tau-heuristic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qubit_count_for_hundred_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    assert!(qwmst(&["gen", "--v", "100", "--seed", "3", "--out", s(&g)]).status.success());
    let doc = ok_json(&["solve", s(&g)]);
    assert_eq!(doc["qubit_count"], 7);
    assert_eq!(doc["v"], 100);
}

#[test]
fn solve_mdc_degree_caps() {
    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    let doc = ok_json(&["solve-mdc", s(&hub), "--delta", "2"]);
    assert_eq!(doc["total_weight"], 14.0);
    assert!(doc["max_degree"].as_u64().unwrap() <= 2);
    assert_eq!(doc["delta"], 2);

    let loose = ok_json(&["solve-mdc", s(&hub), "--delta", "3"]);
    let free = ok_json(&["solve", s(&hub)]);
    assert_eq!(loose["tree"], free["tree"]);

    assert_eq!(qwmst(&["solve-mdc", s(&hub), "--delta", "1"]).status.code(), Some(2));
}

#[test]
fn csv_format_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    let h = dir.path().join("h.csv");
    let p = dir.path().join("p.csv");
    let out = qwmst(&[
        "solve", s(&hub), "--format", "csv", "--dump-h", s(&h), "--dump-p", s(&p),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].contains("0-3;1-3;2-3"));

    let h_rows: Vec<Vec<f64>> = std::fs::read_to_string(&h)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(h_rows.len(), 4);
    assert_eq!(h_rows[0][3], -1.0);
    assert!((h_rows[3][3] - (1.0 + 0.5 + 1.0 / 3.0)).abs() < 1e-15);
    let p_text = std::fs::read_to_string(&p).unwrap();
    for line in p_text.lines() {
        let sum: f64 = line.split(',').map(|x| x.parse::<f64>().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-10);
    }
}

#[test]
fn baselines_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    assert_eq!(ok_json(&["baseline", s(&hub), "--algo", "kruskal"])["total_weight"], 6.0);
    assert_eq!(ok_json(&["baseline", s(&hub), "--algo", "prim"])["total_weight"], 6.0);
    let exact = ok_json(&["baseline", s(&hub), "--algo", "exact_dcmst", "--delta", "2"]);
    assert_eq!(exact["total_weight"], 14.0);
    let aco = ok_json(&["baseline", s(&hub), "--algo", "ant_colony_mdc", "--delta", "2", "--seed", "4"]);
    assert_eq!(aco["seed"], 4);
    assert_eq!(aco["total_weight"], 14.0);
    assert_eq!(qwmst(&["baseline", s(&hub), "--algo", "dijkstra"]).status.code(), Some(2));
    assert_eq!(qwmst(&["baseline", s(&hub), "--algo", "kruskal_mdc"]).status.code(), Some(2));
}

#[test]
fn entropy_rows() {
    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    let out = qwmst(&["entropy", s(&hub), "--tau", "0.1", "--delta", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("tree_id,edges,total_weight,entropy_bits,feasible\n"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 16);
    assert_eq!(rows.iter().filter(|r| r.ends_with("false")).count(), 4);
    assert_eq!(qwmst(&["entropy", s(&hub), "--basis", "full"]).status.code(), Some(2));
}

#[test]
fn input_and_resource_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1 1\n").unwrap();
    assert_eq!(qwmst(&["solve", s(&bad)]).status.code(), Some(2));
    assert_eq!(qwmst(&["solve", s(&dir.path().join("missing.txt"))]).status.code(), Some(2));

    let big = dir.path().join("big.txt");
    assert!(qwmst(&["gen", "--v", "10", "--out", s(&big)]).status.success());
    assert_eq!(qwmst(&["entropy", s(&big)]).status.code(), Some(4));
    let huge = dir.path().join("huge.txt");
    assert!(qwmst(&["gen", "--v", "21", "--out", s(&huge)]).status.success());
    assert_eq!(
        qwmst(&["baseline", s(&huge), "--algo", "exact_dcmst", "--delta", "2"]).status.code(),
        Some(4)
    );
}

#[test]
fn failure_rate_sweep_rows() {
    let out = qwmst(&[
        "sweep", "failure-rate", "--v", "8", "--deltas", "2..7", "--instances", "20", "--seed", "42",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("# config_hash: ")));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 6);
    assert!(rows[5].starts_with("8,7,20,0,0.0,"));
}

/// Drops the elapsed_ms column (last) and metadata from a record CSV.
fn strip_timing(text: &str) -> Vec<String> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.rsplit_once(',').unwrap().0.to_string())
        .collect()
}

#[test]
fn sweeps_are_deterministic_across_threads_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    let journal = dir.path().join("bench.journal");
    let common = [
        "sweep", "mdc-bench", "--v", "6,7", "--deltas", "2..3", "--instances", "3", "--seed", "8",
    ];
    let run = |extra: &[&str]| {
        let mut args = common.to_vec();
        args.extend_from_slice(extra);
        assert!(qwmst(&args).status.success());
    };
    run(&["--threads", "1", "--out", s(&a)]);
    run(&["--threads", "4", "--out", s(&b), "--journal", s(&journal)]);
    run(&["--threads", "2", "--out", s(&c), "--journal", s(&journal)]);
    let ta = std::fs::read_to_string(&a).unwrap();
    let tb = std::fs::read_to_string(&b).unwrap();
    let tc = std::fs::read_to_string(&c).unwrap();
    assert_eq!(strip_timing(&ta), strip_timing(&tb));
    // A resumed run replays the journal, timings included.
    assert_eq!(tb, tc);
    assert_eq!(data_rows(&ta).len(), 2 * 3 * 2 * 6);
}

#[test]
fn tau_max_and_trotter_sweeps() {
    let out = qwmst(&[
        "sweep", "tau-max", "--v", "4..5", "--instances", "2", "--tau-start", "0.01", "--tau-stop", "1", "--tau-step", "0.01",
    ]);
    assert!(out.status.success());
    assert_eq!(data_rows(&stdout(&out)).len(), 4);

    let dir = tempfile::tempdir().unwrap();
    let hub = hub_file(dir.path());
    let out = qwmst(&[
        "sweep", "trotter", "--input", s(&hub), "--tau-start", "0", "--tau-stop", "0.5", "--tau-step", "0.1", "--steps", "1,2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0], "0.0,1,0.0");
}
