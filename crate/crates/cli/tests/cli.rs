//! End-to-end checks of the `extclass` binary: output shape, JSON mode,
//! exit codes for verification failures vs. usage errors.

use assert_cmd::Command;
use predicates::prelude::*;

fn extclass() -> Command {
    Command::cargo_bin("extclass").unwrap()
}

#[test]
fn info_catalog_entry_reports_cohomology() {
    extclass()
        .args(["info", "catalog:g1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("dim H2 = 2"))
        .stdout(predicate::str::contains("Ann dim 1"));
}

#[test]
fn info_parametric_entry_needs_alpha() {
    extclass()
        .args(["info", "catalog:g3"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("requires a parameter"));
}

#[test]
fn info_orbits_over_fp() {
    extclass()
        .args([
            "info",
            "catalog:g3",
            "--field",
            "Fp",
            "--p",
            "3",
            "--alpha",
            "0",
            "--s",
            "1",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("2 orbit(s)"));
}

#[test]
fn info_reads_json_algebra_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heis.json");
    std::fs::write(
        &path,
        r#"{
            "dim": 3,
            "field": "Q",
            "name": "heisenberg",
            "brackets": [{"i": 1, "j": 2, "out": [["1", 3]]}]
        }"#,
    )
    .unwrap();
    extclass()
        .args(["info", path.to_str().unwrap()])
        .assert()
        .success()
        .stdout(predicate::str::contains("heisenberg"))
        .stdout(predicate::str::contains("Ann dim 1"));
}

#[test]
fn info_rejects_malformed_json_with_usage_exit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dim": 3, "field": "Q", "brackets": [{"i": 9, "j": 1, "out": []}]}"#)
        .unwrap();
    extclass()
        .args(["info", path.to_str().unwrap()])
        .assert()
        .code(2);
}

#[test]
fn classify_n4_matches_catalog_rows() {
    extclass()
        .args(["classify", "--n", "4", "--p", "3"])
        .assert()
        .success()
        .stdout(predicate::str::contains("one_to_one=true"))
        .stdout(predicate::str::contains("A_{4,12}"));
}

#[test]
fn classify_json_report() {
    extclass()
        .args(["classify", "--n", "5", "--p", "3", "--json", "-"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"one_to_one\": true"));
}

#[test]
fn verify_paper_single_check() {
    extclass()
        .args(["verify-paper", "--only", "cohomology-dims"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[PASS] cohomology-dims"))
        .stdout(predicate::str::contains("OK: 1/1"));
}

#[test]
fn verify_paper_unknown_check_is_usage_error() {
    extclass()
        .args(["verify-paper", "--only", "no-such-check"])
        .assert()
        .code(2);
}

#[test]
fn catalog_dump_lists_all_families() {
    extclass()
        .args(["catalog", "dump", "--json", "-"])
        .assert()
        .success()
        .stdout(predicate::str::contains("g3(alpha=2)"))
        .stdout(predicate::str::contains("\"name\": \"A3\""));
}

#[test]
fn unknown_flag_is_usage_error() {
    extclass().args(["classify", "--frobnicate"]).assert().code(2);
}

#[test]
fn unknown_catalog_name_is_usage_error() {
    extclass().args(["info", "catalog:nope"]).assert().code(2);
}
