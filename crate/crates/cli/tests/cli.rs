use std::process::{Command, Output};

const TABLE1: &str = include_str!("../../core/tests/fixtures/table1.tsv");
const TABLE2: &str = include_str!("../../core/tests/fixtures/table2.tsv");

fn k3curves(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3curves"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn table1_diff_against_fixture() {
    let out = k3curves(&["table1", "--pmax", "18"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), TABLE1);
}

#[test]
fn table1_single_row() {
    let out = k3curves(&["table1", "--pmax", "1"]);
    assert_eq!(
        stdout(&out),
        "p\\δ\t1\t2\t3\t4\t5\t6\t7\t8\t9\n1\t24\t\t\t\t\t\t\t\t\n"
    );
}

#[test]
fn table1_rejects_out_of_range() {
    assert_eq!(k3curves(&["table1", "--pmax", "0"]).status.code(), Some(2));
    assert_eq!(k3curves(&["table1", "--pmax", "19"]).status.code(), Some(2));
}

#[test]
fn table2_diff_against_fixture() {
    let out = k3curves(&["table2", "--pmax", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text, TABLE2);
    assert!(text.lines().last().unwrap().ends_with("\t5"));
}

#[test]
fn json_output_is_exact_strings() {
    let out = k3curves(&["--format", "json", "table2", "--pmax", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][0]["cells"][2], "324");
    assert!(!stdout(&out).contains('.'));
}

#[test]
fn series_commands() {
    let yz = stdout(&k3curves(&["--trunc", "4", "yz"]));
    assert_eq!(yz, "p\tN\n0\t1\n1\t24\n2\t324\n3\t3200\n");
    let gbl = stdout(&k3curves(&["--trunc", "4", "gbl", "--g", "1"]));
    assert_eq!(gbl, "p\tN\n0\t0\n1\t1\n2\t30\n3\t480\n");
    let kkv = stdout(&k3curves(&["--trunc", "2", "kkv"]));
    assert_eq!(kkv, "g\tp\tr\n0\t0\t1\n0\t1\t24\n1\t1\t-2\n");
}

#[test]
fn nl_and_kml() {
    let nl = stdout(&k3curves(&["nl", "--p", "1", "--d1", "1", "--d2", "1"]));
    assert_eq!(nl, "p\td1\td2\tDelta\tNL\n1\t1\t1\t2\t1056\n");
    let kml = stdout(&k3curves(&["kml", "--d1max", "1", "--d2max", "1"]));
    assert_eq!(kml, "d1\td2\tN\n0\t1\t480\n1\t1\t282888\n");
}

#[test]
fn check_gathmann_itemizes_contributions() {
    let out = k3curves(&["--format", "json", "check", "gathmann"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = &v["checks"][0]["details"];
    assert_eq!(d["nodal_integral"], "70956");
    assert_eq!(d["pairs_of_rational"], "104652");
    assert_eq!(d["reducible_double_covers"], "648");
    assert_eq!(d["total"], "176256");
}

#[test]
fn check_harvey_moore_window_8() {
    let out = k3curves(&["check", "harvey-moore", "--trunc", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS harvey-moore"));
}

#[test]
fn check_all_passes_deterministically() {
    let first = k3curves(&["check", "all"]);
    assert!(first.status.success());
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert_eq!(k3curves(&["check", "all"]).stdout, first.stdout);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(k3curves(&["check", "nope"]).status.code(), Some(2));
}
