//! End-to-end tests of the command-line interface: exit codes, canonical
//! output, and cache behavior.

use std::process::{Command, Output};

fn polydiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydiag"))
        .args(args)
        .env_remove("POLYDIAG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn scp_and_step_matrix() {
    let out = polydiag(&["scp", "21354"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "12|3|45 × 2|135|4\n");

    let out = polydiag(&["step-matrix", "21354"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 0 4\n1 3 5\n2 0 0\n");
}

#[test]
fn delta_p3_lists_eight_components() {
    let out = polydiag(&["delta", "--polytope", "P", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    assert!(text.contains("12|3 × 2|13"));
    assert!(text.contains("123 × 3|2|1"));
    assert!(text.ends_with('\n'));
}

#[test]
fn usage_errors_exit_2() {
    let out = polydiag(&["delta", "--polytope", "Q", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = polydiag(&["scp", "99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = polydiag(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = polydiag(&["delta", "--polytope", "P", "--n", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mp2cp_round_trip() {
    let out = polydiag(&[
        "mp2cp", "--n", "5", "--f", "(ooo)oo", "--g", "o(oo(oo))",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("12|34 × 4|23|1"));
    assert!(text.contains("sigma = 4|2|1|3"));
    assert!(text.contains("M = ({4})"));
    assert!(text.contains("N = ({3})"));
}

#[test]
fn verify_agreement_exits_zero() {
    let out = polydiag(&["verify", "agreement", "--max-n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn faces_counts() {
    let out = polydiag(&["faces", "--polytope", "P", "--n", "3"]);
    assert_eq!(stdout(&out).lines().count(), 13);
    let out = polydiag(&["faces", "--polytope", "K", "--n", "5", "--dim", "2"]);
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn jobs_do_not_change_output() {
    let a = polydiag(&["delta", "--polytope", "P", "--n", "5", "--jobs", "1"]);
    let b = polydiag(&["delta", "--polytope", "P", "--n", "5", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_hit_and_miss_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let miss = polydiag(&[
        "delta", "--polytope", "K", "--n", "5", "--formula", "magical", "--cache-dir", cache,
        "--format", "json",
    ]);
    assert!(miss.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0, "cache not written");
    let hit = polydiag(&[
        "delta", "--polytope", "K", "--n", "5", "--formula", "magical", "--cache-dir", cache,
        "--format", "json",
    ]);
    assert!(hit.status.success());
    assert_eq!(miss.stdout, hit.stdout);
}

#[test]
fn tamari_and_tonks() {
    let out = polydiag(&["tamari-leq", "(ooo)oo", "o(oo(oo))"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");
    let out = polydiag(&["tonks", "13|24"]);
    assert_eq!(stdout(&out), "((oo)(oo)o)\n");
}
