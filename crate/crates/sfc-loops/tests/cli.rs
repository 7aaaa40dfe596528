//! End-to-end binary tests: exit-code contract, byte determinism and the
//! file formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sfc-loops"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn gen_fixture(dir: &Path, n: usize, d: usize, seed: u64) -> String {
    let path = dir.join(format!("pts_{n}_{d}_{seed}.csv"));
    let out = run(&[
        "gen",
        "--generator",
        "uniform",
        "--n",
        &n.to_string(),
        "--d",
        &d.to_string(),
        "--seed",
        &seed.to_string(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "gen failed: {out:?}");
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_fixture(dir.path(), 100, 3, 42);
    let b = dir.path().join("again.csv");
    run(&[
        "gen", "--generator", "uniform", "--n", "100", "--d", "3", "--seed", "42", "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "same seed must give identical bytes"
    );
}

#[test]
fn join_output_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_fixture(dir.path(), 400, 4, 7);
    let mut outputs = Vec::new();
    for workers in ["1", "4"] {
        let out_path = dir.path().join(format!("pairs_{workers}.csv"));
        let out = run(&[
            "join",
            "--input",
            &input,
            "--eps",
            "0.3",
            "--workers",
            workers,
            "--block-bits",
            "5",
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push(std::fs::read(&out_path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "pair files must be byte-identical");
}

#[test]
fn join_trivial_fixture_single_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("three.csv");
    std::fs::write(&input, "0,0\n0,0.5\n10,10\n").unwrap();
    let out_path = dir.path().join("pairs.csv");
    let out = run(&[
        "join",
        "--input",
        input.to_str().unwrap(),
        "--eps",
        "1",
        "--verify",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let pairs = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(pairs, "0,1,0.5\n");
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("\"verified-exact\""), "report: {report}");
}

#[test]
fn exit_codes_follow_contract() {
    let dir = tempfile::tempdir().unwrap();
    // 2: usage error (unknown flag)
    let out = bin().arg("join").arg("--definitely-not-a-flag").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 2: parse error in the input file
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1.0,2.0\nnot,numbers\n").unwrap();
    let out = run(&["join", "--input", bad.to_str().unwrap(), "--eps", "0.5"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {:?}", out.stderr);

    // 1: runtime failure (missing input file)
    let out = run(&[
        "join",
        "--input",
        dir.path().join("missing.csv").to_str().unwrap(),
        "--eps",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // 0: success
    let input = gen_fixture(dir.path(), 50, 2, 1);
    let out = run(&["join", "--input", &input, "--eps", "0.2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn kmeans_verify_and_model_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_fixture(dir.path(), 300, 3, 9);
    let model_path = dir.path().join("model.json");
    let out = run(&[
        "kmeans",
        "--input",
        &input,
        "--k",
        "4",
        "--iters",
        "15",
        "--seed",
        "2",
        "--workers",
        "2",
        "--block-bits",
        "5",
        "--verify",
        "--out",
        model_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let model: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&model_path).unwrap()).unwrap();
    assert_eq!(model["k"], 4);
    assert_eq!(model["assignments"].as_array().unwrap().len(), 300);
}

#[test]
fn matmul_verifies_with_tolerance_status() {
    let out = run(&["matmul", "--sizes", "40x24x56", "--verify", "--workers", "2"]);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("verified-tolerance(1e-12)"), "{report}");
}

#[test]
fn cachesim_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("cache.csv");
    let out = run(&[
        "cachesim",
        "--patterns",
        "selfjoin",
        "--curves",
        "hilbert,rowmajor",
        "--capacities",
        "32",
        "--n",
        "512",
        "--d",
        "4",
        "--block-points",
        "32",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "curve,pattern,capacity,line,accesses,misses"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn schedule_reports_virtual_time() {
    let out = run(&[
        "schedule",
        "--bounds",
        "32x32",
        "--shape",
        "band:2",
        "--workers",
        "3",
        "--block-bits",
        "3",
        "--cost",
        "index",
        "--monotone-dims",
        "0",
    ]);
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(report["schedule"]["time_unit"], "cost");
    assert_eq!(report["workers"], 3);
}

#[test]
fn bench_suite_emits_speedups() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.json");
    std::fs::write(
        &suite,
        r#"{
            "schema": 1,
            "dataset": {"generator": "uniform", "n": 400, "dim": 4, "seed": 3},
            "eps": 0.25,
            "block_bits": 5,
            "runs": [
                {"name": "naive", "kind": "naive"},
                {"name": "sfc-w1", "kind": "sfc", "curve": "hilbert", "workers": 1},
                {"name": "sfc-w2", "kind": "sfc", "curve": "hilbert", "workers": 2}
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["bench", "--suite", suite.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    for line in &lines {
        assert_eq!(line["schema"], 1);
        assert!(line["speedup_vs_baseline"].is_number(), "{line}");
        assert!(line["wall_seconds"].is_number());
    }
    // all runs joined the same data: identical pair counts
    assert_eq!(lines[0]["pairs"], lines[1]["pairs"]);
    assert_eq!(lines[0]["pairs"], lines[2]["pairs"]);
}

#[test]
fn bench_without_baseline_reports_absolute_only() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.json");
    std::fs::write(
        &suite,
        r#"{
            "dataset": {"generator": "uniform", "n": 200, "dim": 2, "seed": 4},
            "eps": 0.2,
            "runs": [{"name": "only-sfc", "kind": "sfc", "workers": 1}]
        }"#,
    )
    .unwrap();
    let out = run(&["bench", "--suite", suite.to_str().unwrap()]);
    assert!(out.status.success());
    let line: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap())
            .unwrap();
    assert!(line.get("speedup_vs_baseline").is_none(), "{line}");
}

#[test]
fn signal_windows_periodic_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sig.csv");
    let out = run(&[
        "gen",
        "--generator",
        "signal",
        "--n",
        "6",
        "--d",
        "8",
        "--periods",
        "12",
        "--stride",
        "12",
        "--noise",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = body.lines().collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| *r == rows[0]), "stride=period rows differ");
}

#[test]
fn workers_default_from_environment() {
    let out = bin()
        .env("SFC_LOOPS_WORKERS", "3")
        .args(["schedule", "--bounds", "16x16", "--block-bits", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["workers"], 3);
}
