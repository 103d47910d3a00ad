//! Black-box tests of the command-line interface: exit codes, stream
//! discipline (data on stdout, diagnostics on stderr), format handling,
//! and determinism across worker counts.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_homfly")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_temp(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).expect("create temp file");
    f.write_all(content.as_bytes()).expect("write temp file");
    path
}

const SMALL_DB: &str = "name,homfly\n\
    3_1,v^2*z^2-v^4-2*v^2\n\
    4_1,z^2-v^2-1-v^-2\n\
    5_2,v^-2*z^2-v^-4*z^2-v^-2+v^-4+v^-6\n\
    9_12,v^-2*z^4-v^-4*z^4-z^2-v^-2*z^2+v^-4*z^2+2*v^-6*z^2+1-v^-4-2*v^-6-v^-8\n";

#[test]
fn missing_input_file_is_a_usage_error() {
    let out = run(&["factor-db", "--input", "/nonexistent/knots.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).is_empty(), "errors must not write to stdout");
    assert!(!stderr_of(&out).is_empty());
}

#[test]
fn malformed_header_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let db = write_temp(dir.path(), "bad.csv", "knot,poly\n3_1,v^2\n");
    let out = run(&["factor-db", "--input", db.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("name") || err.contains("header"), "unhelpful error: {err}");
}

#[test]
fn duplicate_knot_names_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let db = write_temp(
        dir.path(),
        "dup.csv",
        "name,homfly\n3_1,v^2*z^2-v^4-2*v^2\n3_1,v^2*z^2-v^4-2*v^2\n",
    );
    let out = run(&["factor-db", "--input", db.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("3_1"));
}

#[test]
fn odd_parity_polynomial_is_rejected_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let db = write_temp(dir.path(), "parity.csv", "name,homfly\n3_1,v^3*z^2\n");
    let out = run(&["factor-db", "--input", db.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains('3') && err.contains('2'), "expected exponents in: {err}");
}

#[test]
fn csv_format_is_rejected_outside_factor_db() {
    let out = run(&["search", "--max-vertices", "3", "--max-edges", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("csv"));
}

#[test]
fn factor_db_csv_report_lists_the_reducible_entry() {
    let dir = tempfile::tempdir().unwrap();
    let db = write_temp(dir.path(), "small.csv", SMALL_DB);
    let out = run(&["factor-db", "--input", db.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,status,factors,residual"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    let nine_twelve = rows.iter().find(|r| r.starts_with("9_12,")).expect("9_12 row");
    assert!(
        nine_twelve.contains("Factored") && nine_twelve.contains("4_1;5_2"),
        "unexpected row: {nine_twelve}"
    );
}

#[test]
fn factor_db_json_is_identical_across_worker_counts() {
    let path = fixture("knots_upto9.csv");
    let path = path.to_str().unwrap();
    let one = run(&["factor-db", "--input", path, "--jobs", "1"]);
    let four = run(&["factor-db", "--input", path, "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(stdout_of(&one), stdout_of(&four));
}

#[test]
fn jsonl_database_gives_the_same_report_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_temp(dir.path(), "db.csv", SMALL_DB);
    let jsonl: String = SMALL_DB
        .lines()
        .skip(1)
        .map(|l| {
            let (name, poly) = l.split_once(',').unwrap();
            format!("{{\"name\": \"{name}\", \"homfly\": \"{poly}\"}}\n")
        })
        .collect();
    let jl = write_temp(dir.path(), "db.jsonl", &jsonl);
    let a = run(&["factor-db", "--input", csv.to_str().unwrap()]);
    let b = run(&["factor-db", "--input", jl.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn output_flag_writes_the_report_file_and_keeps_stdout_clean() {
    let dir = tempfile::tempdir().unwrap();
    let db = write_temp(dir.path(), "small.csv", SMALL_DB);
    let report = dir.path().join("report.json");
    let out = run(&[
        "factor-db",
        "--input",
        db.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let text = std::fs::read_to_string(&report).expect("report written");
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(parsed.as_array().unwrap().len(), 4);
    assert!(text.ends_with('\n'), "report files end with a newline");
}

#[test]
fn convert_prints_both_conventions_for_a_positional_polynomial() {
    let out = run(&["convert", "v^2*z^2-v^4-2*v^2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("JSON object");
    assert_eq!(v["input"], "v^2*z^2-v^4-2*v^2");
    let ki = v["ki"].as_str().unwrap();
    let homog = v["homogeneous"].as_str().unwrap();
    assert!(ki.contains('v') && ki.contains('z'));
    assert!(homog.contains('x') && homog.contains('y'));
}

#[test]
fn convert_rejects_odd_parity_input() {
    let out = run(&["convert", "v*z^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("parity") || stderr_of(&out).contains("exponent"));
}

#[test]
fn convert_requires_a_polynomial_or_an_input_file() {
    let out = run(&["convert"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_processes_a_polynomial_file_into_an_array() {
    let dir = tempfile::tempdir().unwrap();
    let polys = write_temp(
        dir.path(),
        "polys.txt",
        "v^2*z^2-v^4-2*v^2\n\nz^2-v^2-1-v^-2\n",
    );
    let out = run(&["convert", "--input", polys.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("JSON array");
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2, "blank lines are skipped");
    assert!(arr.iter().all(|e| e.get("input").is_some()
        && e.get("ki").is_some()
        && e.get("homogeneous").is_some()));
}

#[test]
fn search_emits_certificates_then_a_summary() {
    let out = run(&["search", "--max-vertices", "5", "--max-edges", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 2, "one hit plus one summary expected: {text}");
    let hit: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(hit["graph"], "v3:0-1,0-2,1-2,1-2,1-2,1-2");
    assert_eq!(hit["verdict"], "Inconclusive");
    let summary: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(summary["examined"], 113);
    assert_eq!(summary["inconclusive"], 1);
    // Hits are called out on stderr so they are visible even when stdout
    // is redirected to a file.
    assert!(stderr_of(&out).to_lowercase().contains("inconclusive"));
}

#[test]
fn check_graph_reports_certificate_and_factor_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let graphs = write_temp(
        dir.path(),
        "graphs.jsonl",
        "{\"name\": \"square\", \"vertices\": 4, \"edges\": [[0,1],[1,2],[2,3],[0,3]]}\n\
         {\"name\": \"path\", \"vertices\": 3, \"edges\": [[0,1],[1,2]]}\n",
    );
    let out = run(&["check-graph", "--input", graphs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("JSON array");
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    let square = &arr[0];
    assert_eq!(square["name"], "square");
    assert_eq!(square["certificate"]["verdict"], "CertifiedIrreducible");
    assert_eq!(square["factor_check"]["agrees_with_certificate"], true);
    let path = &arr[1];
    assert_eq!(path["name"], "path");
    assert!(path["error"].as_str().unwrap().contains("2-connected"));
}

#[test]
fn verify_identities_passes_and_reports_seed() {
    let out = run(&["verify-identities", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("JSON object");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["all_pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
}
