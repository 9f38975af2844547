use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(args: &[&str]) -> Vec<Value> {
    let mut a = args.to_vec();
    a.extend(["--output", "records"]);
    let o = ramsey(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ramsey-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn bound_all_for_five() {
    let o = ramsey(&["bound", "--sizes", "5,5", "--formula", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("classic: m(5,5) <= 2677"));
    assert!(text.contains("edge: m(5,5) <= 392"));
    assert!(text.contains("balanced2: m(5,5) <= 392"));

    let r = records(&["bound", "--sizes", "5,5"]);
    let values: Vec<&str> = r.iter().map(|v| v["value"].as_str().unwrap()).collect();
    assert_eq!(values, vec!["2677", "392", "392"]);
}

#[test]
fn bound_edge_three() {
    let r = records(&["bound", "--sizes", "3,3", "--formula", "edge"]);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["value"], "2");
}

#[test]
fn discrepancies_are_annotated_with_exit_zero() {
    let o = ramsey(&["bound", "--sizes", "3,3,4", "--formula", "balanced"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("published claim 56 (differs)"));
    let r = records(&["bound", "--sizes", "3,3,4", "--formula", "balanced", "--r334", "30"]);
    assert_eq!(r[0]["value"], "10");
    assert_eq!(r[0]["published_claim"], 56);
    let r = records(&["bound", "--sizes", "4,4", "--formula", "edge"]);
    assert_eq!(r[0]["value"], "16");
    assert_eq!(r[0]["published_claim"], 15);
}

#[test]
fn tables_are_stable_and_agree() {
    let a = ramsey(&["tables"]);
    let b = ramsey(&["tables"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("5114696152715"));
    assert!(text.contains("4065272127504"));
    assert!(text.contains("reference agreement: all cells"));
    let r = records(&["tables"]);
    assert_eq!(r[0]["identical"], true);
    assert_eq!(r[0]["edge_table"]["rows"][5]["ours"]["computed"], "1031423263728477286449152");
}

#[test]
fn text_and_records_agree() {
    let text = stdout(&ramsey(&["bound", "--sizes", "4,4,4", "--formula", "edge"]));
    let r = records(&["bound", "--sizes", "4,4,4", "--formula", "edge"]);
    let v = r[0]["value"].as_str().unwrap();
    assert!(text.contains(&format!("<= {v}")));
}

#[test]
fn oracle_writes_witness() {
    let dir = scratch("oracle");
    let o = ramsey(&["oracle", "--sizes", "3,3", "--n", "6", "--out-dir", dir.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("for (3,3): 2"));
    let w = std::fs::read_to_string(dir.join("oracle_witness.col")).unwrap();
    let c = ramsey_core::coloring::read_coloring(&w).unwrap();
    assert_eq!(c.n(), 6);
    assert_eq!(c.mono_clique_count(1, 3) + c.mono_clique_count(2, 3), 2);
    std::fs::remove_dir_all(dir).unwrap();

    let a = records(&["oracle", "--sizes", "3,3", "--n", "6", "--workers", "1"]);
    let b = records(&["oracle", "--sizes", "3,3", "--n", "6", "--workers", "3"]);
    assert_eq!(a, b);
}

#[test]
fn construct_reports_nine_copies() {
    let dir = scratch("construct");
    let o = ramsey(&["construct", "--n", "8", "--s", "4", "--out-dir", dir.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("K_4 copies: 9"));
    let g = std::fs::read_to_string(dir.join("book_8_4.graph")).unwrap();
    let c = ramsey_core::coloring::read_coloring(&g).unwrap();
    assert_eq!(c.k(), 1);
    assert_eq!(c.class(1).count_cliques(4), 9);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn extend_then_certify() {
    let dir = scratch("extend");
    let d = dir.to_str().unwrap();
    let paley5 = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/paley5.col");
    let r = records(&["extend", "--coloring", paley5, "--pivot", "0", "--out-dir", d]);
    assert_eq!(r[0]["good"], true);
    assert_eq!(r[0]["n"], 6);
    let mut text = std::fs::read_to_string(dir.join("extended.col")).unwrap();
    text.push_str("G: 0-5\n");
    let cert = dir.join("k6.cert");
    std::fs::write(&cert, text).unwrap();
    let o = ramsey(&["certify", "--certificate", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: PASS"));
    let r = records(&["bound", "--sizes", "3,3", "--formula", "general", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(r[0]["value"], "2");
    std::fs::remove_dir_all(dir).unwrap();

    let r = records(&["extend", "--coloring", "bundled:paley17", "--pivot", "0"]);
    assert_eq!(r[0]["good"], true);
    assert_eq!(r[0]["sizes"], serde_json::json!([4, 4]));
}

#[test]
fn search_is_reproducible() {
    let args = ["search", "--sizes", "3,3", "--n", "6", "--budget", "100", "--seed", "5", "--workers", "2"];
    let a = ramsey(&args);
    let b = ramsey(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("general: m(3,3) <= "));
}

#[test]
fn exit_codes() {
    assert_eq!(ramsey(&["bound", "--sizes", "3,x"]).status.code(), Some(2));
    assert_eq!(ramsey(&["bound"]).status.code(), Some(2));
    assert_eq!(ramsey(&["bound", "--sizes", "3,3", "--formula", "general"]).status.code(), Some(2));
    assert_eq!(ramsey(&["certify", "--certificate", "/no/such/file"]).status.code(), Some(3));

    let dir = scratch("exit");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.col");
    std::fs::write(&bad, "3 2\n1 x\n1\n").unwrap();
    let o = ramsey(&["extend", "--coloring", bad.to_str().unwrap(), "--pivot", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(dir).unwrap();

    assert_eq!(ramsey(&["oracle", "--sizes", "3,3", "--n", "9", "--budget", "10"]).status.code(), Some(4));
    assert_eq!(ramsey(&["construct", "--n", "3", "--s", "4"]).status.code(), Some(4));
}
