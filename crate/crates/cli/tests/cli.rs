//! End-to-end CLI behavior: flags, exit codes, diagnostics, output routing.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const EXAMPLE_CSV: &str = "Name,Gender,Race,Actual,Predicted\n\
    Alex,Female,Caucasian,Positive,Positive\n\
    Ben,Male,Asian,Negative,Positive\n\
    Cam,Male,Asian,Positive,Positive\n\
    Dan,Male,Asian,Negative,Negative\n";

fn write_file(dir: &TempDir, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairpriori"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn audit_args(data: &Path) -> Vec<String> {
    [
        "--data",
        data.to_str().unwrap(),
        "--predicted",
        "Predicted",
        "--actual",
        "Actual",
        "--categories",
        "Positive,Negative",
        "--positive",
        "Positive",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn run_audit(data: &Path, extra: &[&str]) -> Output {
    let mut args = audit_args(data);
    args.extend(extra.iter().map(|s| s.to_string()));
    run(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

fn stderr_line(output: &Output) -> String {
    let text = String::from_utf8_lossy(&output.stderr);
    assert_eq!(
        text.trim_end_matches('\n').lines().count(),
        1,
        "diagnostic must be one line, got: {text:?}"
    );
    text.trim_end().to_string()
}

#[test]
fn audit_reports_to_stdout() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    let out = run_audit(&data, &["--metric", "predictive_parity", "--ignore", "Name"]);
    assert!(out.status.success());
    assert!(out.stderr.is_empty());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(All)"));
    assert!(text.contains("(Gender=Male, Race=Asian)"));
    assert!(text.contains("0.666667"));
}

#[test]
fn csv_and_json_formats() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    let csv_out = run_audit(&data, &["--output", "csv", "--ignore", "Name"]);
    assert!(csv_out.status.success());
    let text = String::from_utf8(csv_out.stdout).unwrap();
    assert!(text.starts_with("itemsets,support,metric,difference,count,numerator,denominator\n"));

    let json_out = run_audit(&data, &["--output", "json", "--ignore", "Name"]);
    assert!(json_out.status.success());
    let rows: serde_json::Value =
        serde_json::from_slice(&json_out.stdout).expect("valid json");
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert_eq!(rows[0]["support"], 1.0);
}

#[test]
fn out_file_routes_report_away_from_stdout() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    let target = dir.path().join("report.csv");
    let out = run_audit(
        &data,
        &["--output", "csv", "--out-file", target.to_str().unwrap()],
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("itemsets,"));
}

#[test]
fn out_of_range_support_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    let out = run_audit(&data, &["--min-support", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_line(&out).contains("min_support"));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_metric_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    let out = run_audit(&data, &["--metric", "accuracy"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_line(&out).contains("unknown metric"));
}

#[test]
fn missing_mandatory_flag_is_usage_error() {
    let out = run(&["--data", "whatever.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_line(&out).contains("--predicted"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    stderr_line(&out);
}

#[test]
fn missing_file_is_data_error() {
    let out = run(&[
        "--data",
        "/nonexistent/never.csv",
        "--predicted",
        "p",
        "--actual",
        "a",
        "--categories",
        "A,B",
        "--positive",
        "A",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).contains("cannot read"));
}

#[test]
fn outcome_outside_categories_is_data_error() {
    let dir = TempDir::new().unwrap();
    let data = write_file(
        &dir,
        "bad.csv",
        "x,Actual,Predicted\na,Maybe,Positive\n",
    );
    let out = run_audit(&data, &[]);
    assert_eq!(out.status.code(), Some(2));
    let line = stderr_line(&out);
    assert!(line.contains("Maybe") && line.contains("row 1"), "{line}");
}

#[test]
fn unknown_ignored_attribute_is_data_error() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    let out = run_audit(&data, &["--ignore", "Nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).contains("Nope"));
}

#[test]
fn outcome_vectors_from_separate_files() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", "Gender,Race\nFemale,Caucasian\nMale,Asian\n");
    let pred = write_file(&dir, "pred.csv", "pred\nPositive\nNegative\n");
    let act = write_file(&dir, "act.csv", "act\nPositive\nPositive\n");
    let out = run(&[
        "--data",
        data.to_str().unwrap(),
        "--predicted",
        pred.to_str().unwrap(),
        "--actual",
        act.to_str().unwrap(),
        "--categories",
        "Positive,Negative",
        "--positive",
        "Positive",
        "--min-support",
        "0.5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("attributes=Gender,Race"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let data = write_file(&dir, "data.csv", EXAMPLE_CSV);
    for format in ["table", "csv", "json"] {
        let a = run_audit(&data, &["--output", format]);
        let b = run_audit(&data, &["--output", format]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "format {format}");
    }
}

#[test]
fn help_prints_the_input_contract() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in [
        "--data",
        "--predicted",
        "--actual",
        "--categories",
        "--positive",
        "--min-support",
        "--max-length",
        "--metric",
        "--ignore",
        "--output",
        "--out-file",
    ] {
        assert!(text.contains(flag), "help missing {flag}");
    }
}

#[test]
fn bench_grid_runs_and_verifies() {
    let dir = TempDir::new().unwrap();
    let spec = write_file(
        &dir,
        "spec.json",
        r#"{"seed": 3, "n_rows": 400,
            "attributes": [{"name":"a0","cardinality":2},{"name":"a1","cardinality":2}],
            "positive_rate": 0.5}"#,
    );
    let out = run(&[
        "bench",
        "--spec",
        spec.to_str().unwrap(),
        "--supports",
        "0.3,0.6",
        "--lengths",
        "1,2",
        "--engines",
        "fused,naive",
        "--output",
        "csv",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "min_support,max_length,engine,wall_time_secs,n_subgroups");
    assert_eq!(lines.len(), 1 + 2 * 2 * 2);

    let json_out = run(&[
        "bench",
        "--spec",
        spec.to_str().unwrap(),
        "--supports",
        "0.5",
        "--lengths",
        "1",
        "--output",
        "json",
    ]);
    assert!(json_out.status.success());
    let cells: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(cells.as_array().unwrap().len(), 1);
}

#[test]
fn bench_bad_spec_is_data_error() {
    let dir = TempDir::new().unwrap();
    let spec = write_file(&dir, "spec.json", r#"{"seed": 1}"#);
    let out = run(&["bench", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).contains("cannot parse"));
}

#[test]
fn bench_unknown_engine_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let spec = write_file(&dir, "spec.json", "{}");
    let out = run(&["bench", "--spec", spec.to_str().unwrap(), "--engines", "turbo"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_line(&out).contains("unknown engine"));
}
