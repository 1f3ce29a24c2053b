use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsemi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("finsemi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn validate_accepts_data_files() {
    for f in ["b31.sr", "b31-ses.sr", "b43.sr", "m3.lat", "n5.lat", "chain4.lat"] {
        let o = run(&["validate", data(f).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn corrupted_table_is_rejected() {
    let good = std::fs::read_to_string(data("b31.sr")).unwrap();
    // 1 + 1 = 0 breaks associativity of + with the rest of the table
    let bad = good.replacen("1 2 1\n", "1 0 1\n", 1);
    assert_ne!(good, bad);
    let path = scratch("bad.sr", &bad);
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let path = scratch("range.sr", &good.replacen("0 2 2\n", "0 2 7\n", 1));
    assert_eq!(run(&["analyze", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn analyze_reports_b31_structure() {
    let o = run(&["analyze", data("b31.sr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("C1 no ({0,2} is not a summand)"), "{text}");
    assert!(text.contains("ideal-semisimple no, congruence-semisimple no"));

    let o = run(&["--format", "json", "analyze", data("b31.sr").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["c1"], false);
    assert_eq!(v["c2"], true);
    assert_eq!(v["subtractive"], serde_json::json!([[0], [0, 2], [0, 1, 2]]));
}

#[test]
fn analyze_finds_left_splitting_of_b31_sequence() {
    let o = run(&["analyze", data("b31-ses.sr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("left split yes via [0 1 1], right split no"), "{text}");
}

#[test]
fn catalog_output_round_trips() {
    let o = run(&["catalog", "bni", "--n", "4", "--i", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("b43.sr", &stdout(&o));
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(0));

    let o = run(&["catalog", "product", data("b31.sr").to_str().unwrap(), path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 12"));
}

#[test]
fn non_distributive_lattice_is_rejected_as_semiring() {
    assert_eq!(run(&["catalog", "lattice", data("m3.lat").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "lattice", data("chain4.lat").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn audit_exit_codes() {
    assert_eq!(run(&["audit", "--order", "2"]).status.code(), Some(0));
    assert_eq!(run(&["--limits", "bogus=3", "audit", "--order", "2"]).status.code(), Some(2));
    assert_eq!(run(&["audit", "--order", "9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn audit_json_lines_parse() {
    let o = run(&["--format", "json", "audit", "--order", "2", data("b31.sr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(records.iter().any(|r| r["claim_id"] == "thm-isscomm.(1)<=>(5)" && r["verdict"] == "discrepancy"));
}
