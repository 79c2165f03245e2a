use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dirramsey(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirramsey"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(dir: &Path) -> Value {
    let text = std::fs::read_to_string(dir.join("dirramsey-report.json")).expect("report written");
    serde_json::from_str(&text).expect("report is JSON")
}

#[test]
fn exact_r_of_two_short_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["exact", "r", "--targets", "p3", "p3", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path());
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["outcome"], "value 3");
    assert_eq!(r["details"]["value"], 3);
    assert_eq!(r["verification"], "oracle-checked");
    assert!(dir.path().join("exact-r-witness.col").exists());
}

#[test]
fn single_target_is_repeated_per_colour() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["exact", "rt", "--targets", "p2", "--colours", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(dir.path())["details"]["value"], 2);
}

#[test]
fn lex_construction_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["construct", "lex", "--n", "3", "--l", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let col = dir.path().join("lex-n3-l2-k2.col");
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("lex-n3-l2-k2.json")).unwrap()).unwrap();
    assert_eq!(side["order"], 6);
    assert_eq!(side["verification"]["passed"], true);

    // Directed path with three edges.
    let tree = dir.path().join("p4.tree");
    std::fs::write(&tree, "t 4\n0 1\n1 2\n2 3\n").unwrap();
    let out = dirramsey(dir.path(), &["check", "--colouring", col.to_str().unwrap(), "--tree", tree.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(report(dir.path())["outcome"], "pass");

    // Colour 2 has components of order 3, so a 3-vertex path exists there.
    let out = dirramsey(dir.path(), &["check", "--colouring", col.to_str().unwrap(), "--path-order", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(dir.path())["outcome"], "fail");
}

#[test]
fn layered_defaults_to_last_stage() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["construct", "layered", "--n", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["details"]["order"], 4 * 2 * 2);
}

#[test]
fn embed_path_writes_checked_certificate() {
    let dir = tempfile::tempdir().unwrap();
    dirramsey(dir.path(), &["construct", "lex", "--n", "3", "--l", "2", "--k", "2"]);
    let col = dir.path().join("lex-n3-l2-k2.col");
    let out = dirramsey(dir.path(), &["embed", "path", "--colouring", col.to_str().unwrap(), "--targets", "p3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path());
    assert_eq!(r["verification"], "oracle-checked");
    assert!(dir.path().join("embed-path.cert.json").exists());
}

#[test]
fn empty_colouring_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("empty.col");
    std::fs::write(&col, "").unwrap();
    let out = dirramsey(dir.path(), &["check", "--colouring", col.to_str().unwrap(), "--path-order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(report(dir.path())["outcome"], "usage-error");
}

#[test]
fn capped_search_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["exact", "rt", "--targets", "p3", "--colours", "3", "--max-n", "20"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(dir.path());
    assert!(r["outcome"].as_str().unwrap().starts_with("inconclusive"));
    assert_eq!(r["exit_code"], 3);
}

#[test]
fn bad_flags_exit_two_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["exact", "rt", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(dir.path())["outcome"], "usage-error");
    let out = dirramsey(dir.path(), &["exact", "rt", "--targets", "not-a-tree"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quick_suite_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirramsey(dir.path(), &["suite", "--runs", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("criterion")).count(), 6);
}
