//! End-to-end tests of the `coentropy` binary: command output, file output,
//! and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coentropy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn entropy_worked_example() {
    let out = run(&["entropy", "--edges", "{{1,2},{1,3}}", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // S = 2 ln 2 - (3/4) ln 3
    assert!(text.contains("exact: 2:2; 3:-3/4"), "{text}");
    assert!(text.contains("0.5623351446"), "{text}");
}

#[test]
fn entropy_json_output() {
    let out = run(&["--json", "entropy", "--edges", "{{1,2},{1,3}}"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["entropy_exact_key"], "2:2;3:-3/4");
}

#[test]
fn spectrum_of_path() {
    let out = run(&["spectrum", "--edges", "3; {1,2} {1,3}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("charpoly: 0,3,-4,1"), "{text}");
    assert!(text.contains("spectrum: [0, 1, 3]"), "{text}");
}

#[test]
fn state_dump_has_exact_amplitudes() {
    let out = run(&["state", "--graph6", "A_"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(v=1, arc=(1,2)): +1/\u{221a}2"), "{text}");
    assert!(text.contains("tr_E"), "{text}");
    assert!(text.contains("tr_V"), "{text}");
}

#[test]
fn convert_round_trip() {
    let out = run(&["convert", "--edges", "{{1,2},{1,3}}", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("graph6:"), "{text}");
    let g6 = text
        .lines()
        .find(|l| l.starts_with("graph6:"))
        .unwrap()
        .split_whitespace()
        .nth(1)
        .unwrap()
        .to_string();
    let back = run(&["convert", "--graph6", &g6]);
    assert!(stdout(&back).contains("{{1, 2}, {1, 3}}"));
}

#[test]
fn enumerate_streams_canonical_graph6() {
    let out = run(&["enumerate", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 11);
    let out = run(&["enumerate", "--n", "4", "--connected"]);
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn check_props_small() {
    let out = run(&["check-props", "--max-n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("[PASS]").count(), 3, "{text}");
}

#[test]
fn search_writes_pairs_and_summary() {
    let dir = std::env::temp_dir().join(format!("coentropy-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pairs: PathBuf = dir.join("pairs.jsonl");
    let summary: PathBuf = dir.join("summary.csv");
    let out = run(&[
        "search",
        "--n",
        "8",
        "--class",
        "connected",
        "--out",
        pairs.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let lines: Vec<String> = std::fs::read_to_string(&pairs)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 3); // the three connected 8-vertex pairs
    for l in &lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["cospectral"], false);
        assert!(v["m"].is_u64());
    }
    let csv = std::fs::read_to_string(&summary).unwrap();
    assert!(csv.contains("coentropic_pairs"), "{csv}");
    assert!(csv.lines().nth(1).unwrap().starts_with("8,connected,11117,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn search_accepts_graph6_file() {
    let dir = std::env::temp_dir().join(format!("coentropy-g6-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("graphs.g6");
    // the known 8-vertex example pair plus noise
    std::fs::write(&file, "G?B~v{\nG?K~~w\nG???A?\n").unwrap();
    let out = run(&[
        "search",
        "--n",
        "8",
        "--graph6",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 coentropic pairs") || text.contains("1 coentropic pair"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    // usage error: 2
    let out = run(&["entropy", "--badflag"]);
    assert_eq!(out.status.code(), Some(2));
    // verification/operation failure: 1 (entropy of the empty graph)
    let out = run(&["entropy", "--graph6", "A?"]);
    assert_eq!(out.status.code(), Some(1));
    // malformed graph6: 1
    let out = run(&["spectrum", "--graph6", "not-a-graph"]);
    assert_eq!(out.status.code(), Some(1));
}
