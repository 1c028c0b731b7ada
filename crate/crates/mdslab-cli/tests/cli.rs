//! End-to-end checks of the command-line interface through the real binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mdslab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("mdslab-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn construct_classify_round_trip() {
    let file = tmp("ex4.code");
    let out = run(&[
        "construct", "esgrs", "--q", "11", "--S", "3,4,5,6,7", "--v", "1", "--k", "3",
        "-o", file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("field=GF(11) n=6 k=3"));

    let out = run(&["classify", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[6,3,4]_11 MDS"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn construct_rl_and_extension_field() {
    let out = run(&["construct", "rl", "--q", "11", "--S", "3,4,5,6,7", "--k", "4", "--delta", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("field=GF(11) n=7 k=4"));

    let out = run(&["construct", "esgrs", "--q", "8", "--S", "0,1,2,3,4,5,6,7", "--k", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("GF(2^3; modulus=1,1,0,1)"));
}

#[test]
fn usage_errors_exit_2() {
    // missing --k
    let out = run(&["construct", "esgrs", "--q", "11", "--S", "3,4,5,6,7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deepholes_csv_contains_published_vector() {
    let file = tmp("holes.code");
    let out = run(&[
        "construct", "esgrs", "--q", "11", "--S", "3,4,5,6,7", "--k", "3",
        "-o", file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["deepholes", file.to_str().unwrap(), "--limit", "2000000"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.starts_with("vector,error_distance,rho,is_deep_hole"));
    assert!(csv.contains("7 10 5 5 1 4,3,3,true"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn criteria_csv_matches_published_sets() {
    let out = run(&[
        "criteria", "--q", "11", "--S", "3,4,5,6,7", "--k", "3",
        "--g-kp1", "2", "--u-scalar", "0", "--fk", "3",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.contains("admissible,8"));
    assert!(!csv.contains("forbidden,8"));
    assert_eq!(csv.matches("forbidden,").count(), 10);
}

#[test]
fn extend_writes_the_published_extension() {
    let base = tmp("base.code");
    run(&[
        "construct", "esgrs", "--q", "11", "--S", "3,4,5,6,7", "--k", "3",
        "-o", base.to_str().unwrap(),
    ]);
    let out = run(&["extend", base.to_str().unwrap(), "--u", "7,10,5,5,1,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("field=GF(11) n=7 k=4"));
    let info = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(info.contains("extended [7,4,4]_11 MDS"));
    std::fs::remove_file(&base).ok();
}

#[test]
fn search_streams_jsonl() {
    // the first accepting tuples sit past the leading zero-coefficient
    // block of 11^4 grid points
    let out = run(&[
        "algorithm1", "--q", "11", "--S", "3,4,5,6,7", "--k", "3",
        "--budget", "16000", "--seed", "0", "--emit", "jsonl",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    let mut lines = 0;
    for line in body.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON per line");
        assert_eq!(v["n"], 7);
        assert_eq!(v["k"], 4);
        assert!(v["tag"] == "MDS" || v["tag"] == "NMDS");
        lines += 1;
    }
    assert!(lines > 0);

    // zero budget yields an empty stream
    let out = run(&[
        "search", "--q", "11", "--S", "3,4,5,6,7", "--k", "3", "--budget", "0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());

    // an NMDS configuration emits only NMDS records under the filter
    let out = run(&[
        "search", "--q", "7", "--S", "1,2,3,4,5", "--k", "3",
        "--budget", "3000", "--only", "nmds",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["tag"], "NMDS");
    }
}

#[test]
fn equiv_reports_witness_or_none() {
    let a = tmp("equiv-a.code");
    let b = tmp("equiv-b.code");
    run(&[
        "construct", "rl", "--q", "11", "--S", "3,4,5,6,7", "--k", "4", "--delta", "9",
        "-o", a.to_str().unwrap(),
    ]);
    run(&[
        "construct", "rl", "--q", "11", "--S", "3,4,5,6,7", "--k", "4", "--delta", "10",
        "-o", b.to_str().unwrap(),
    ]);
    // the two published sibling deltas are equivalent to the same extension,
    // hence to each other
    let out = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("perm="));

    run(&[
        "construct", "rl", "--q", "11", "--S", "3,4,5,6,7", "--k", "4", "--delta", "5",
        "-o", b.to_str().unwrap(),
    ]);
    let out = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "NONE");
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
}

#[test]
fn mkz_bench_reports_bounds() {
    let file = tmp("mkz.code");
    run(&[
        "construct", "esgrs", "--q", "7", "--S", "1,2,3,4,5", "--k", "3",
        "-o", file.to_str().unwrap(),
    ]);
    let out = run(&[
        "mkz-bench", "--n", "6", "--k", "3", "--q", "7",
        "--code", file.to_str().unwrap(), "--samples", "25",
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = stdout(&out);
    assert!(body.contains(&format!("per-vector bound (primal): {}", 6 * 3 * 4 + 49 * 6 * 3)));
    assert!(body.contains("exhaustive bound (primal):"));
    assert!(body.contains("measured over 25 samples"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn reproduce_exit_codes() {
    let out = run(&["reproduce", "counterexample"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("6/6 checks passed"));
    let out = run(&["reproduce", "q8-square"]);
    assert!(out.status.success());
    // unknown example names are reported as errors
    let out = run(&["reproduce", "example9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn threads_flag_accepted() {
    let out = bin()
        .env("MDSLAB_THREADS", "2")
        .args(["reproduce", "counterexample"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = run(&["--threads", "1", "reproduce", "counterexample"]);
    assert!(out.status.success());
}
