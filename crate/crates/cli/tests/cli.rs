use std::path::Path;
use std::process::{Command, Output};

fn adek3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adek3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_lists_rank_four_in_order() {
    let o = adek3(&["enumerate", "--max-rank", "4"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(&lines[6..], ["A1^4", "A1^2+A2", "A2^2", "A1+A3", "A4", "D4"]);
}

#[test]
fn enumerate_counts_all_configurations() {
    let o = adek3(&["enumerate", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "7573");
}

#[test]
fn single_configuration_as_json_and_csv() {
    let o = adek3(&["classify", "--config", "A1^8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\"config\": \"A1^8\""), "{text}");
    assert!(text.contains("\"status\": \"Irreducible\""), "{text}");
    assert!(text.contains("smooth-quasi-etale-cover:Z/2"));

    let o = adek3(&["classify", "--config", "A8+A1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("config,rank,status,simple,families"), "{text}");
    assert!(text.contains("A1+A8,9,"), "{text}");
}

#[test]
fn classify_writes_exports_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("run");
    let o = adek3(&["classify", "--max-rank", "8", "--jobs", "2", "--out", prefix.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("real="), "{text}");
    assert!(text.contains("cover tags partial"));
    for ext in ["json", "csv", "manifest.json"] {
        assert!(Path::new(&format!("{}.{ext}", prefix.display())).exists(), "{ext}");
    }
    let manifest = std::fs::read_to_string(format!("{}.manifest.json", prefix.display())).unwrap();
    assert!(manifest.contains("\"max_rank\": 8"));
    assert!(manifest.contains("\"jobs\": 2"));
}

#[test]
fn cover_table_removes_partial_marker() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("covers.txt");
    std::fs::write(&table, "A1^8 # Z/2\nA2^6 # Z/3\n").unwrap();
    let prefix = dir.path().join("run");
    let o = adek3(&[
        "classify",
        "--max-rank",
        "12",
        "--format",
        "csv",
        "--xiao-table",
        table.to_str().unwrap(),
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("partial"));
    let csv = std::fs::read_to_string(format!("{}.csv", prefix.display())).unwrap();
    assert_eq!(csv.matches("smooth-quasi-etale-cover").count(), 2);
    let manifest = std::fs::read_to_string(format!("{}.manifest.json", prefix.display())).unwrap();
    assert!(manifest.contains("sha256"));
}

#[test]
fn exit_codes() {
    assert_eq!(adek3(&["classify", "--config", "A0"]).status.code(), Some(2));
    assert_eq!(adek3(&["classify", "--config", "A1^20"]).status.code(), Some(2));
    assert_eq!(adek3(&["classify", "--config", "A1^12", "--budget", "1"]).status.code(), Some(3));
    assert_eq!(adek3(&["bogus"]).status.code(), Some(2));
}

#[test]
fn fixtures_pass_and_sign_flip_fails() {
    let o = adek3(&["verify-fixtures"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("61 of 61 fixtures passed"));
    let o = adek3(&["verify-fixtures", "--odd-sign", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  rank19/"));
}
