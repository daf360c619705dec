//! End-to-end runs of the `morita` binary against the fixtures directory.
//! Reports are compared with `tests/golden/*.json`; set `UPDATE_GOLDEN=1`
//! to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use morita_cli::document::{build, read_document, to_document};
use serde_json::Value;
use tempfile::tempdir;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn morita(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_morita"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 report"), out.status.code().unwrap_or(-1))
}

fn check_golden(name: &str, args: &[&str], expected_code: i32) -> Value {
    let (stdout, code) = morita(args);
    assert_eq!(code, expected_code, "{name}: exit code\n{stdout}");
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, &stdout).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout, expected, "{name}: report differs from golden file");
    serde_json::from_str(&stdout).expect("report is JSON")
}

#[test]
fn validate_reports() {
    let r = check_golden("validate_pair", &["validate", "pair2.json"], 0);
    assert_eq!(r["status"], "pass");

    let r = check_golden("validate_associativity", &["validate", "bad_associativity.json"], 1);
    assert_eq!(r["stages"][0]["outcome"], "invalid");
    assert_eq!(r["stages"][0]["witness"]["witness"]["basis"], serde_json::json!([1, 1, 1]));

    let r = check_golden("validate_malformed", &["validate", "malformed.json"], 1);
    let w = &r["stages"][0]["witness"];
    assert_eq!(w["error"], "parse");
    assert_eq!(w["line"], 4);

    check_golden("validate_groupoid_inverse", &["validate", "bad_inverse.json"], 1);
    check_golden("validate_degenerate", &["validate", "corr_degenerate.json"], 1);
}

#[test]
fn validate_rejects_duplicate_names() {
    let (stdout, code) = morita(&["validate", "pair2.json", "pair2.json"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("\"duplicates\""));
}

#[test]
fn compose_reports() {
    let r = check_golden("compose_col_row", &["compose", "--calculus", "rings", "col2_f2.json", "row2_f2.json"], 0);
    assert_eq!(r["stages"][0]["witness"]["result"]["dim"], 4);
    let r = check_golden("compose_unit_col", &["compose", "--calculus", "rings", "unit_m2_f2.json", "col2_f2.json"], 0);
    assert_eq!(r["stages"][2]["outcome"], "iso-found");
    let r = check_golden("compose_cstar", &["compose", "--calculus", "cstar", "corr_unit.json", "corr_double.json"], 0);
    assert_eq!(r["stages"][0]["witness"]["result"]["mult"], serde_json::json!([[2, 0], [1, 1]]));
    check_golden("compose_mismatch", &["compose", "--calculus", "rings", "row2_f2.json", "row2_f2.json"], 1);
}

#[test]
fn coherence_reports() {
    check_golden(
        "coherence_rings",
        &[
            "coherence",
            "--calculus",
            "rings",
            "unit_f2.json",
            "col2_f2.json",
            "row2_f2.json",
            "unit_m2_f2.json",
            "f2_squared.json",
        ],
        0,
    );
    let r = check_golden(
        "coherence_cstar",
        &["coherence", "--calculus", "cstar", "corr_swap.json", "corr_unit.json", "corr_double.json"],
        0,
    );
    assert_eq!(r["stages"][1]["witness"]["strict"], true);
    check_golden(
        "coherence_groupoids",
        &["coherence", "--calculus", "groupoids", "pair2_point.json", "point_pair2.json"],
        0,
    );
}

#[test]
fn morita_reports() {
    check_golden("morita_column", &["morita", "--calculus", "rings", "col2_f2.json"], 0);
    let r = check_golden("morita_search", &["morita", "--calculus", "rings", "f2xf2.json", "f2.json"], 2);
    assert_eq!(r["status"], "unknown");
    let r = check_golden("morita_split", &["morita", "--calculus", "cstar", "corr_split.json"], 1);
    assert_eq!(r["stages"][1]["name"], "compacts-iso");
    assert_eq!(r["stages"][1]["witness"]["k"], serde_json::json!([1, 1]));
    check_golden("morita_swap", &["morita", "--calculus", "cstar", "corr_swap.json"], 0);
    let r = check_golden("morita_pair", &["morita", "--calculus", "groupoids", "pair3.json", "point.json"], 0);
    assert_eq!(r["stages"][2]["outcome"], "biprincipal");
    check_golden("morita_z4_klein", &["morita", "--calculus", "groupoids", "z4.json", "klein.json"], 1);
    check_golden("morita_bibundle", &["morita", "--calculus", "groupoids", "pair2_point.json"], 0);
    check_golden("morita_not_equivalence", &["morita", "--calculus", "rings", "f2_squared.json"], 1);
}

#[test]
fn rep_check_reports() {
    check_golden("rep_rings", &["rep-check", "--calculus", "rings", "--cap", "2", "col2_f2.json"], 0);
    check_golden("rep_unit", &["rep-check", "--calculus", "rings", "unit_f2.json"], 0);
    check_golden("rep_groupoids", &["rep-check", "--calculus", "groupoids", "--cap", "4", "pair2_point.json"], 0);
    let r = check_golden("rep_uncertified", &["rep-check", "--calculus", "rings", "f2_squared.json"], 1);
    assert_eq!(r["stages"][0]["outcome"], "error");
}

#[test]
fn reports_are_deterministic() {
    let runs: [&[&str]; 3] = [
        &["coherence", "--calculus", "rings", "unit_f2.json", "col2_f2.json", "row2_f2.json"],
        &["morita", "--calculus", "groupoids", "pair2.json", "point.json"],
        &["--seed", "7", "rep-check", "--calculus", "rings", "col2_f2.json"],
    ];
    for args in runs {
        assert_eq!(morita(args), morita(args), "{args:?}");
    }
}

#[test]
fn text_format_renders_the_same_status() {
    let (stdout, code) = morita(&["--format", "text", "morita", "--calculus", "cstar", "corr_split.json"]);
    assert_eq!(code, 1);
    assert!(stdout.starts_with("morita: fail (seed 0)\n"));
    assert!(stdout.contains("compacts-iso: refuted"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(morita(&["frobnicate"]).1, 64);
    assert_eq!(morita(&["morita", "--calculus", "rings"]).1, 64);
}

fn write_out(args: &[&str], out: &Path) -> i32 {
    let mut all: Vec<&str> = args.to_vec();
    let out = out.to_str().unwrap();
    all.extend(["--out", out]);
    morita(&all).1
}

#[test]
fn compose_writes_the_composite() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("m2.json");
    assert_eq!(write_out(&["compose", "--calculus", "rings", "col2_f2.json", "row2_f2.json"], &out), 0);
    let doc = read_document(&out).unwrap();
    assert_eq!(doc.name, "col2.row2");
    let (stdout, code) = morita(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    // col ⊗ row is M2(F2) as a bimodule over itself
    let unit = dir.path().join("unit.json");
    fs::copy(fixtures().join("unit_m2_f2.json"), &unit).unwrap();
    let (_, code) = morita(&["compose", "--calculus", "rings", unit.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn certificates_round_trip_through_documents() {
    let dir = tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    assert_eq!(write_out(&["morita", "--calculus", "groupoids", "pair2.json", "point.json"], &cert), 0);
    let doc = read_document(&cert).unwrap();
    let again = to_document(&doc.name, &build(&doc).unwrap());
    assert_eq!(again, doc);
    let path = cert.to_str().unwrap();
    assert_eq!(morita(&["rep-check", "--calculus", "groupoids", path]).1, 0);

    let inv = dir.path().join("inverse.json");
    assert_eq!(write_out(&["morita", "--calculus", "rings", "col2_f2.json"], &inv), 0);
    assert_eq!(morita(&["morita", "--calculus", "rings", inv.to_str().unwrap()]).1, 0);

    let conj = dir.path().join("conjugate.json");
    assert_eq!(write_out(&["morita", "--calculus", "cstar", "corr_swap.json"], &conj), 0);
    let doc = read_document(&conj).unwrap();
    assert_eq!(doc.payload["mult"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn no_output_file_on_failure() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("none.json");
    assert_eq!(write_out(&["morita", "--calculus", "groupoids", "z4.json", "klein.json"], &out), 1);
    assert!(!out.exists());
}
