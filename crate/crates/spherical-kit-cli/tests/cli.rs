//! End-to-end runs of the installed binary against the shipped fixtures.
//! Every behaviour pinned here is also covered by a direct library test,
//! so a failure means the adapter layer drifted, not the mathematics.

use std::path::PathBuf;

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn bin() -> Command {
    Command::cargo_bin("spherical-kit").unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout_json(cmd: &mut Command) -> Value {
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "command failed: {out:?}");
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_accepts_the_fork_chain_fixture() {
    bin()
        .arg("validate")
        .arg(fixture("dcstar5.sys"))
        .assert()
        .success()
        .stdout("all axioms pass\n");
}

#[test]
fn validate_positions_a_syntax_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "broken.sys", "group: D4\nsigma: a1+a9\n");
    bin()
        .arg("validate")
        .arg(&path)
        .assert()
        .failure()
        .code(1)
        .stderr(predicate::str::contains("parse error at line 2"));
}

#[test]
fn validate_reports_failing_axioms() {
    // A spherical simple root without its two A-elements.
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "axioms.sys", "group: A2\nsigma: a1, 2a2\n");
    bin()
        .arg("validate")
        .arg(&path)
        .assert()
        .failure()
        .code(1)
        .stderr(predicate::str::contains("system is not valid"));
}

#[test]
fn colours_lists_every_root_class() {
    bin()
        .arg("colours")
        .arg(fixture("dcstar5.sys"))
        .assert()
        .success()
        .stdout(
            predicate::str::contains("5 colours")
                .and(predicate::str::contains("b(a1)"))
                .and(predicate::str::contains("b(a5)")),
        );
}

#[test]
fn colours_json_carries_rows_and_moved_roots() {
    let v = stdout_json(bin().arg("colours").arg(fixture("dcstar5.sys")).arg("--json"));
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 5);
    assert_eq!(items[0]["name"], "b(a1)");
    assert_eq!(items[0]["kind"], "b");
    assert_eq!(items[0]["row"], serde_json::json!([1, -1, 0, 0]));
    assert_eq!(items[0]["moves"], serde_json::json!(["a1"]));
}

#[test]
fn distinguished_accepts_the_worked_pair() {
    bin()
        .arg("distinguished")
        .arg(fixture("dcstar5.sys"))
        .args(["--colours", "d_a1,d_a3"])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("distinguished: yes")
                .and(predicate::str::contains("sigma(D'): a3+a4, a3+a5"))
                .and(predicate::str::contains("smooth: no"))
                .and(predicate::str::contains("star: yes")),
        );
}

#[test]
fn distinguished_rejects_a_single_colour() {
    bin()
        .arg("distinguished")
        .arg(fixture("dcstar5.sys"))
        .args(["--colours", "b(a1)"])
        .assert()
        .failure()
        .code(1)
        .stdout(predicate::str::contains("distinguished: no"));
}

#[test]
fn quotient_prints_the_worked_sum() {
    bin()
        .arg("quotient")
        .arg(fixture("dcstar5.sys"))
        .args(["--colours", "d_a1,d_a3"])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("Σ/Δ′ = a1+2a2+a3")
                .and(predicate::str::contains("S^p/Δ′ = a1, a3"))
                .and(predicate::str::contains("sigma: a1+2a2+a3")),
        );
}

#[test]
fn quotient_json_carries_the_quotient_vector() {
    let v = stdout_json(
        bin()
            .arg("quotient")
            .arg(fixture("dcstar5.sys"))
            .args(["--colours", "d_a1,d_a3", "--json"]),
    );
    assert_eq!(v["quotient"]["sigma"], serde_json::json!([[1, 2, 1, 0, 0]]));
    assert_eq!(v["quotient"]["sp"], serde_json::json!(["a1", "a3"]));
    assert_eq!(v["smooth"], Value::Bool(false));
}

#[test]
fn quotient_needs_a_distinguished_subset() {
    bin()
        .arg("quotient")
        .arg(fixture("dcstar5.sys"))
        .args(["--colours", "b(a1)"])
        .assert()
        .failure()
        .code(1)
        .stderr(predicate::str::contains("not distinguished"));
}

#[test]
fn parabolic_quotient_drops_to_rank_zero() {
    bin()
        .arg("quotient")
        .arg(fixture("dcstar4.sys"))
        .args(["--colours", "d_a2"])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("Σ/Δ′ = (empty: rank 0)")
                .and(predicate::str::contains("S^p/Δ′ = a2")),
        );
}

#[test]
fn localize_restricts_to_the_fork() {
    bin()
        .arg("localize")
        .arg(fixture("dcstar5.sys"))
        .args(["--roots", "a3,a4,a5"])
        .assert()
        .success()
        .stdout("group: A3\nsigma: a1+a2, a2+a3\n");
}

#[test]
fn localize_by_position_keeps_the_chain() {
    bin()
        .arg("localize")
        .arg(fixture("dcstar5.sys"))
        .args(["--sigma", "1,2"])
        .assert()
        .success()
        .stdout("group: D5\nsigma: a1+a2, a2+a3\n");
}

#[test]
fn localize_requires_a_selection() {
    bin()
        .arg("localize")
        .arg(fixture("dcstar5.sys"))
        .assert()
        .failure()
        .code(2);
}

#[test]
fn reduce_runs_the_comb_through_its_fibration() {
    bin()
        .arg("reduce")
        .arg(fixture("comb2.sys"))
        .assert()
        .success()
        .stdout(
            predicate::str::contains("projective-fibration by 'shared'")
                .and(predicate::str::contains("1 rank 0: leaf")),
        );
}

#[test]
fn classify_lists_both_rank_one_systems_of_a1() {
    bin().arg("classify").arg("A1").assert().success().stdout(
        "2 systems on A1\n\
         \n\
         # 1\n\
         group: A1\n\
         sigma: a1\n\
         a:\n  d+(a1): 1\n  d-(a1): 1\n\
         \n\
         # 2\n\
         group: A1\n\
         sigma: 2a1\n",
    );
}

#[test]
fn classify_json_and_threads_agree() {
    let v = stdout_json(
        bin()
            .arg("classify")
            .arg("D4")
            .args(["--cuspidal", "--max-rank", "1", "--threads", "2", "--json"]),
    );
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 1);
    assert_eq!(items[0]["group"], "D4");
}

#[test]
fn invariants_match_the_closed_form() {
    bin()
        .arg("invariants")
        .arg(fixture("do13.sys"))
        .assert()
        .success()
        .stdout("dim: 12\nrank_xi: 0\ncuspidal: yes\nrigid: yes\nprimitive: yes\n");
}

#[test]
fn render_text_draws_the_fork_chain() {
    bin()
        .arg("render")
        .arg(fixture("dcstar4.sys"))
        .assert()
        .success()
        .stdout(" (o)~~~(o)~~~(o)\n        ~\n       (o)\n");
}

#[test]
fn render_writes_svg_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("do13.svg");
    bin()
        .arg("render")
        .arg(fixture("do13.sys"))
        .args(["--format", "svg", "--out"])
        .arg(&out)
        .assert()
        .success()
        .stdout("");
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg xmlns"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn affine_finds_a_witness_for_the_doubled_system() {
    bin()
        .arg("affine")
        .arg(fixture("do13.sys"))
        .assert()
        .success()
        .stdout("affine: yes\nwitness: 3/2, 2\n");
}

#[test]
fn rigid_detects_duplicate_functionals() {
    bin()
        .arg("rigid")
        .arg(fixture("dcstar5.sys"))
        .assert()
        .success()
        .stdout("rigid: yes\n");
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "dup.sys",
        "group: A1\nsigma: a1\na:\n  d+(a1): 1\n  d-(a1): 1\n",
    );
    bin()
        .arg("rigid")
        .arg(&path)
        .assert()
        .success()
        .stdout("rigid: no\n");
}

#[test]
fn unknown_colour_token_is_a_domain_error() {
    bin()
        .arg("quotient")
        .arg(fixture("dcstar5.sys"))
        .args(["--colours", "d_zz"])
        .assert()
        .failure()
        .code(1)
        .stderr(predicate::str::contains("unknown simple root 'zz'"));
}

#[test]
fn bare_invocation_is_a_usage_error() {
    bin().assert().failure().code(2);
}
