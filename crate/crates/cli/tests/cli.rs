use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logcontact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn splitting_rank_plus() {
    let o = run(&["splitting", "rank+", "--split", "2,0,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn splitting_operations() {
    let cases: [(&[&str], &str); 8] = [
        (&["splitting", "degree", "--split", "2,0,-1"], "1"),
        (&["splitting", "dual", "--split", "2,0,-1"], "{1, 0, -2}"),
        (&["splitting", "twist", "--split", "2,0", "--k", "-1"], "{1, -1}"),
        (&["splitting", "ext1", "--split", "0", "--other", "-2"], "1"),
        (&["splitting", "extension", "--split", "1,0", "--other", "1"], "true"),
        (&["splitting", "selfdual", "--split", "1,-2", "--k", "1"], "true"),
        (&["splitting", "bound", "--split", "1,1,0", "--r", "1", "--boundary-free"], "false"),
        (&["splitting", "arrangement", "--n", "3", "--s", "2"], "{1, 1, 0}"),
    ];
    for (args, expected) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), expected, "{args:?}");
    }
}

#[test]
fn splitting_usage_errors_exit_2() {
    assert_eq!(run(&["splitting", "rank+"]).status.code(), Some(2));
    assert_eq!(run(&["splitting", "rank+", "--split", "2,x"]).status.code(), Some(2));
    assert_eq!(run(&["splitting", "frobnicate", "--split", "1"]).status.code(), Some(2));
    assert_eq!(run(&["splitting", "arrangement", "--n", "2", "--s", "0"]).status.code(), Some(2));
}

#[test]
fn construct_then_glue_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let atlas = dir.path().join("ns.json");
    let o = run(&["construct", "nonstandard", "--r", "2", "--s", "1", "--m", "1", "-o", path(&atlas)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = run(&["glue", path(&atlas)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS  U -> U'");

    let o = run(&["verify-contact", path(&atlas), "--r", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 2);
    assert!(stdout(&o).contains("top coefficient 6"));
}

#[test]
fn construct_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["construct", "standard", "--r", "1", "--m", "1"][..],
        &["construct", "nonstandard", "--r", "3", "--s", "2", "--g", "1 + y2", "3 - y1*y2"][..],
        &["construct", "jet", "--r", "2"][..],
    ] {
        let first = run(args);
        assert_eq!(first.status.code(), Some(0), "{args:?}: {}", stderr(&first));
        let file = dir.path().join("atlas.json");
        fs::write(&file, stdout(&first)).unwrap();
        let glued = run(&["glue", path(&file)]);
        assert_eq!(glued.status.code(), Some(0), "{args:?}");
        let again = run(&[args, &["-o", path(&dir.path().join("again.json"))]].concat());
        assert_eq!(again.status.code(), Some(0));
        let a: Value = serde_json::from_str(&stdout(&first)).unwrap();
        let b: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("again.json")).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn corrupted_atlas_fails_naming_the_transition() {
    let dir = tempfile::tempdir().unwrap();
    let atlas = dir.path().join("bad.json");
    let o = run(&["construct", "nonstandard", "--r", "1", "--s", "1", "--no-correction", "-o", path(&atlas)]);
    assert_eq!(o.status.code(), Some(0));
    let report = dir.path().join("report.json");
    let o = run(&["glue", path(&atlas), "--json", path(&report)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL  U -> U'"), "{}", stdout(&o));
    let json: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["entries"][0]["status"], "FAIL");
    assert_eq!(json["entries"][0]["transition"], "U -> U'");
}

#[test]
fn malformed_atlas_exits_2_with_a_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let atlas = dir.path().join("a.json");
    let o = run(&["construct", "standard", "--r", "0", "--m", "1", "-o", path(&atlas)]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&atlas).unwrap().replace("dlog y1p", "dy1p");
    fs::write(&atlas, text).unwrap();
    let o = run(&["glue", path(&atlas)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/forms/U'/0/covectors/0"), "{}", stderr(&o));

    fs::write(&atlas, "{\"charts\": {\"U\": {\"vars\": 3}}}").unwrap();
    let o = run(&["glue", path(&atlas)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/charts/U/vars"), "{}", stderr(&o));

    let o = run(&["glue", path(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chern_program() {
    let dir = tempfile::tempdir().unwrap();
    let program = dir.path().join("p.json");
    fs::write(
        &program,
        r#"{"ring": {"kind": "P", "n": 3}, "steps": [{"op": "tangent"}, {"op": "log", "degrees": [2], "convention": "OD(D)"}, {"op": "twist", "t": "-h"}, {"op": "c", "i": 3}, {"op": "integrate"}]}"#,
    )
    .unwrap();
    let o = run(&["chern", path(&program)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "-1");

    fs::write(&program, r#"{"ring": {"kind": "Q3"}, "steps": [{"op": "tangent"}]}"#).unwrap();
    let o = run(&["chern", path(&program)]);
    assert_eq!(stdout(&o).trim(), "rank 3 bundle, c = 1 + 3*h + 4*h^2 + 2*h^3");

    fs::write(&program, r#"{"ring": {"kind": "P", "n": 3}, "steps": [{"op": "tangent"}, {"op": "twist", "t": "h^"}]}"#)
        .unwrap();
    let o = run(&["chern", path(&program)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn paper_suite_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&["paper-suite", "--json", path(&out), "--grid", "rmax=2", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    let p3 = json["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "c05.appendix.p3[OD(D)]")
        .expect("P³ entry");
    assert_eq!(p3["expected"], "-1");
    assert_eq!(p3["actual"], "-1");
    assert_eq!(p3["status"], "PASS");
    assert_eq!(json["summary"]["fail"], 0);
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn paper_suite_conventions() {
    let o = run(&["paper-suite", "--convention", "both", "--grid", "rmax=1", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("RECORDED") && l.contains("c05.appendix.p3[OD]")));

    let o = run(&["paper-suite", "--convention", "OD", "--grid", "rmax=1", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL") && l.contains("c05.appendix.p3[OD]")));

    assert_eq!(run(&["paper-suite", "--convention", "ODD"]).status.code(), Some(2));
    assert_eq!(run(&["paper-suite", "--grid", "r=3"]).status.code(), Some(2));
}
