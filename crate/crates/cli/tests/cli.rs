use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fktree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fktree")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn comet_tree_file() {
    let out = fktree(&["construct", "comet", "--n", "14", "--k", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("14"));
    let edges: Vec<(usize, usize)> = lines
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(edges.len(), 13);
    let mut deg = [0usize; 14];
    for (u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut interior: Vec<usize> = deg.iter().copied().filter(|&d| d > 1).collect();
    interior.sort();
    assert_eq!(interior, vec![2, 2, 2, 2, 2, 8]);
}

#[test]
fn solve_path_of_four() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.tree", "4\n0 1\n1 2\n2 3\n");
    let out = fktree(&["solve", "--input", &p4]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["lambda"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["f"][0].as_f64(), Some(0.0));
}

#[test]
fn verify_exit_codes() {
    let ok = fktree(&["verify", "--theorem", "thm3", "--max-n", "8"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = json(&ok);
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    let unknown = fktree(&["verify", "--theorem", "thm9"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("--theorem"));
}

#[test]
fn construct_then_normalize_is_a_no_op() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["construct", "comet", "--n", "14", "--k", "6"],
        vec!["construct", "td-min", "--n", "12", "--k", "4", "--d", "3"],
        vec!["construct", "slo-star", "--pi", "3 3 3 4 4 4 5 6 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1"],
        vec!["construct", "relaxed", "--kind", "iv", "--params", "k=5,d=3"],
    ] {
        let tree = write(dir.path(), "t.tree", &stdout(&fktree(&args)));
        assert!(fktree(&["solve", "--input", &tree]).status.success());
        let out = fktree(&["normalize", "--input", &tree]);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(json(&out)["trace"]["effective_moves"], 0, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "t.tree", "9\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n2 7\n4 8\n");
    for args in [
        vec!["normalize", "--input", tree.as_str()],
        vec!["solve", "--input", tree.as_str()],
        vec!["enumerate", "--pi", "3 3 2 2 1 1 1 1", "--format", "csv"],
        vec!["verify", "--theorem", "thm1", "--max-n", "8"],
    ] {
        let a = fktree(&args);
        let b = fktree(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_redirects_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out = fktree(&["enumerate", "--pi", "2 2 3 1 1 1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rows: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert!(!rows.as_array().unwrap().is_empty());
}

#[test]
fn compare_reports_verdict_and_eigenvalues() {
    let v = json(&fktree(&["compare", "--pi-a", "2 2 1 1", "--pi-b", "3 1 1 1"]));
    assert_eq!(v["leq"], true);
    assert!((v["lambda_a"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["lambda_b"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn validation_errors_exit_one_naming_the_flag() {
    for (args, flag) in [
        (vec!["solve", "--bogus"], "--bogus"),
        (vec!["solve", "--input", "/definitely/missing.tree"], "--input"),
        (vec!["construct", "comet", "--n", "3", "--k", "6"], "--n"),
        (vec!["construct", "slo-star", "--pi", "2 2 2 1"], "--pi"),
        (vec!["construct", "relaxed", "--kind", "ii", "--params", "n=9"], "--params"),
        (vec!["compare", "--pi-a", "2 2 1 1", "--pi-b", "2 3 1 1 1"], "--pi-a"),
    ] {
        let out = fktree(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(flag), "{args:?}: {err}");
    }
    assert_eq!(fktree(&["--help"]).status.code(), Some(0));
}
