//! End-to-end checks of the binary: golden outputs, exit codes, and
//! byte-for-byte determinism.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codemat"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).expect("write fixture");
    path
}

const RUNNING_EXAMPLE: &str = "0000\n1100\n0110\n0011\n1110\n0111\n1111\n";

#[test]
fn cf_prints_the_four_canonical_generators() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "ex.code", RUNNING_EXAMPLE);
    let out = run(&["cf", "ex.code"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let got: BTreeSet<&str> = text.lines().collect();
    let expected: BTreeSet<&str> = [
        "x1*(1-x2)",
        "x2*(1-x1)*(1-x3)",
        "x3*(1-x2)*(1-x4)",
        "x4*(1-x3)",
    ]
    .into_iter()
    .collect();
    assert_eq!(got, expected);
}

#[test]
fn brank_exact_distinguishes_the_isomorphic_pair() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "narrow.bmat", "00\n10\n01\n11\n");
    write_file(dir.path(), "wide.bmat", "000\n100\n010\n111\n");
    let narrow = run(&["brank", "--exact", "narrow.bmat"], dir.path());
    let wide = run(&["brank", "--exact", "wide.bmat"], dir.path());
    assert!(narrow.status.success());
    assert!(wide.status.success());
    assert_eq!(stdout(&narrow).trim(), "2");
    assert_eq!(stdout(&wide).trim(), "3");
}

#[test]
fn iso_reports_both_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "narrow.code", "00\n10\n01\n11\n");
    write_file(dir.path(), "wide.code", "000\n100\n010\n111\n");
    write_file(dir.path(), "other.code", "00\n11\n");
    let yes = run(&["iso", "narrow.code", "wide.code"], dir.path());
    assert!(yes.status.success());
    assert_eq!(stdout(&yes).trim(), "isomorphic");
    let no = run(&["iso", "narrow.code", "other.code"], dir.path());
    assert!(no.status.success());
    assert_eq!(stdout(&no).trim(), "not isomorphic");
}

#[test]
fn factorize_prints_the_residual_factor_or_fails() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "c.code", "00\n10\n01\n11\n");
    write_file(dir.path(), "h.bmat", "10\n01\n11\n");
    let ok = run(&["factorize", "c.code", "--via", "h.bmat"], dir.path());
    assert!(ok.status.success(), "{}", stderr(&ok));
    assert_eq!(stdout(&ok), "000\n100\n010\n111\n");

    write_file(dir.path(), "bad.bmat", "11\n");
    let err = run(&["factorize", "c.code", "--via", "bad.bmat"], dir.path());
    assert_eq!(err.status.code(), Some(1));
    assert!(stderr(&err).contains("no left factor"));
}

#[test]
fn poset_summary_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["poset", "--seed-lambda", "2", "--dot", "g.dot", "--json", "g.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("nodes 7"));
    assert!(text.contains("truncated false"));
    let dot = fs::read_to_string(dir.path().join("g.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
    let graph: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(graph["nodes"].as_array().unwrap().len(), 7);
    assert!(graph["edges"].as_array().unwrap().iter().all(|e| {
        e["from"].is_string() && e["to"].is_string() && e["bmf"].is_boolean()
    }));
}

#[test]
fn exit_codes_separate_domain_resource_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.code", "0a0\n");
    let parse = run(&["cf", bad.to_str().unwrap()], dir.path());
    assert_eq!(parse.status.code(), Some(1));
    assert!(stderr(&parse).contains("line 1, column 2"));

    let missing = run(&["cf", "nosuch.code"], dir.path());
    assert_eq!(missing.status.code(), Some(1));

    // a scan width past the exact-factorization cap is refused as oversized
    let resource = run(
        &["conjecture-scan", "--samples", "1", "--nmax", "7"],
        dir.path(),
    );
    assert_eq!(resource.status.code(), Some(2));

    let usage = run(&["cf", "--no-such-flag"], dir.path());
    assert_eq!(usage.status.code(), Some(1));

    let help = run(&["--help"], dir.path());
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "ex.code", RUNNING_EXAMPLE);
    for args in [
        vec!["cf", "ex.code", "--json"],
        vec!["trunks", "ex.code"],
        vec!["covering", "ex.code", "--json"],
        vec!["brank", "--bounds", "ex.code", "--json"],
        vec!["conjecture-scan", "--samples", "5", "--nmax", "4", "--json"],
    ] {
        let first = run(&args, dir.path());
        let second = run(&args, dir.path());
        assert!(first.status.success(), "{:?}: {}", args, stderr(&first));
        assert_eq!(first.stdout, second.stdout, "{args:?} must be stable");
    }
}

#[test]
fn verify_reports_every_law_green() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--seed", "99"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("28 checks, 28 passed, 0 failed"));
    assert!(!text.contains("FAIL"));
}
