//! Exit-code contract and file-format behavior of the shipped binary.

use std::process::{Command, Output};

fn run(dir: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiedler"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary launches")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec![],
        vec!["no-such-subcommand"],
        vec!["sbm"],
        vec!["sbm", "--n", "forty", "--p", "0.6", "--q", "0.2", "--out", "g.txt"],
        vec!["mc", "--n", "40", "--p", "0.6", "--q", "0.2", "--trials", "5", "--out", "x.csv"],
        vec!["sbm", "--n", "40", "--p", "0.6", "--q", "0.2", "--out", "g.txt", "--bogus"],
    ] {
        let out = run(dir.path(), &args);
        assert_eq!(code(&out), 2, "args {args:?}: {out:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    for args in [vec!["--help"], vec!["--version"], vec!["mc", "--help"]] {
        let out = run(dir.path(), &args);
        assert_eq!(code(&out), 0, "args {args:?}");
    }
}

#[test]
fn runtime_failures_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    // Missing input file.
    let out = run(
        dir.path(),
        &[
            "analyze", "--graph", "missing.txt", "--labels", "missing.labels",
            "--p", "0.6", "--q", "0.2", "--out", "a.csv",
        ],
    );
    assert_eq!(code(&out), 1);

    // Parameters out of range (q >= p) parse fine but fail validation.
    let out = run(
        dir.path(),
        &[
            "sbm", "--n", "40", "--p", "0.2", "--q", "0.6", "--out", "g.txt",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(
        String::from_utf8_lossy(&out.stderr).starts_with("error:"),
        "stderr: {:?}",
        out.stderr
    );
}

#[test]
fn corrupt_graph_reports_offending_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "n 4\n2 1\n").unwrap();
    std::fs::write(dir.path().join("bad.labels"), "+1\n+1\n-1\n-1\n").unwrap();
    let out = run(
        dir.path(),
        &[
            "analyze", "--graph", "bad.txt", "--labels", "bad.labels",
            "--p", "0.6", "--q", "0.2", "--out", "a.csv",
        ],
    );
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn sbm_then_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "sbm", "--n", "60", "--p", "0.8", "--q", "0.2", "--seed", "1",
            "--out", "g.txt",
        ],
    );
    assert_eq!(code(&out), 0);

    let graph = fiedler::io::load_graph(&dir.path().join("g.txt")).unwrap();
    assert_eq!(graph.num_vertices(), 60);
    let labels = fiedler::io::load_labels(&dir.path().join("g.txt.labels")).unwrap();
    assert_eq!(labels.len(), 60);

    let out = run(
        dir.path(),
        &[
            "analyze", "--graph", "g.txt", "--labels", "g.txt.labels",
            "--p", "0.8", "--q", "0.2", "--eps", "0.1", "--out", "a.csv",
        ],
    );
    assert_eq!(code(&out), 0);

    let text = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    let data_rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data_rows.len(), 60, "one row per vertex");
    for row in &data_rows {
        assert_eq!(row.split(',').count(), 7, "row {row:?}");
    }
    assert!(text.lines().next().unwrap().starts_with("# fiedler "));
    assert!(text.contains("# global_error="));
    assert!(text.contains("# subset: eps=0.1 "));
}

#[test]
fn synth_then_knn_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "synth", "--m-per-class", "15", "--d", "8", "--separation", "0.5",
            "--flip-rho", "0.1", "--seed", "2", "--out", "data.csv",
        ],
    );
    assert_eq!(code(&out), 0);
    let data = fiedler::io::load_dataset(&dir.path().join("data.csv")).unwrap();
    assert_eq!(data.m(), 30);
    assert_eq!(data.d(), 8);

    let out = run(
        dir.path(),
        &[
            "knn", "--data", "data.csv", "--k-fraction", "0.2", "--out", "kg.txt",
        ],
    );
    assert_eq!(code(&out), 0);
    let graph = fiedler::io::load_graph(&dir.path().join("kg.txt")).unwrap();
    assert_eq!(graph.num_vertices(), 30);
    assert!(graph.num_edges() >= 30 * 6 / 2, "union of 6-NN lists");
    let labels = fiedler::io::load_labels(&dir.path().join("kg.txt.labels")).unwrap();
    assert_eq!(labels, data.labels());
}
