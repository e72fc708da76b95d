//! End-to-end tests of the binary: exit codes, determinism, and the JSON
//! report schema.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_species-cli"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn passing_suite_exits_zero() {
    let out = run(&[
        "check",
        "--species",
        "bipartite",
        "--variant",
        "union",
        "--cap",
        "3,3",
        "--checks",
        "d1,exp-formula",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("overall: pass"));
}

#[test]
fn closed_forms_check_from_the_cli() {
    let out = run(&[
        "check",
        "--species",
        "magic",
        "--s",
        "2",
        "--cap",
        "3,3",
        "--checks",
        "closed-forms",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn wrong_weight_fails_with_witness_and_exit_one() {
    let out = run(&[
        "check",
        "--species",
        "bipartite",
        "--variant",
        "completion",
        "--weight",
        "edges",
        "--cap",
        "2,2",
        "--checks",
        "w2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("weight-multiplicativity"));
}

#[test]
fn unknown_names_are_config_errors() {
    let out = run(&[
        "check",
        "--species",
        "bipartite",
        "--cap",
        "2,2",
        "--checks",
        "nonsense",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "check",
        "--species",
        "armadillo",
        "--cap",
        "2",
        "--checks",
        "d1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // arity mismatch between cap and species
    let out = run(&[
        "check",
        "--species",
        "binary",
        "--cap",
        "2,2",
        "--checks",
        "d1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // closed forms only exist for magic s=2
    let out = run(&[
        "check",
        "--species",
        "binary",
        "--cap",
        "3",
        "--checks",
        "closed-forms",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_has_its_own_exit_code() {
    let out = run(&[
        "check",
        "--species",
        "bipartite",
        "--cap",
        "2,2",
        "--checks",
        "exp-formula",
        "--budget",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn identical_config_gives_byte_identical_output() {
    let args = [
        "check",
        "--species",
        "binary",
        "--cap",
        "4",
        "--checks",
        "d1,partition,refined-formula,pointwise",
        "--seed",
        "42",
        "--json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_report_schema() {
    let out = run(&[
        "check",
        "--species",
        "magic",
        "--s",
        "2",
        "--variant",
        "all",
        "--cap",
        "2,2",
        "--checks",
        "d1,basepoint",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["config"]["species"], "magic");
    let reports = value["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for report in reports {
        assert_eq!(report["verdict"], "pass");
        assert!(report["cases_checked"].as_u64().unwrap() > 0);
        assert!(report.get("name").is_some());
        assert!(report.get("elapsed_ms").is_some());
    }
}

#[test]
fn pointwise_failure_is_a_verdict_not_an_error() {
    let out = run(&[
        "check",
        "--species",
        "binary",
        "--cap",
        "3",
        "--checks",
        "pointwise",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let witness = &value["reports"][0]["witness"];
    assert!(witness["kind"].as_str().unwrap().starts_with("pointwise-"));
    assert!(witness["items"].as_array().unwrap().len() >= 4);
}

#[test]
fn series_table_matches_counts() {
    let out = run(&[
        "series",
        "--species",
        "binary",
        "--cap",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows, vec!["(0)  1", "(1)  2", "(2)  4", "(3)  8"]);
}

#[test]
fn refined_series_row_marks_components() {
    let out = run(&[
        "series",
        "--species",
        "bipartite",
        "--variant",
        "union",
        "--cap",
        "1,1",
        "--refined",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("(1,1)  y^2 + t*y"));
}

#[test]
fn magic_series_diagonal() {
    let out = run(&[
        "series", "--species", "magic", "--s", "2", "--cap", "3,3", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = value["rows"].as_array().unwrap();
    let diag: Vec<String> = rows
        .iter()
        .filter(|r| r["index"][0] == r["index"][1])
        .map(|r| r["value"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(diag, vec!["1", "1", "3", "21"]);
}

#[test]
fn psi_check_runs_from_the_cli() {
    let out = run(&[
        "check",
        "--species",
        "bipartite",
        "--variant",
        "completion",
        "--cap",
        "2,1",
        "--checks",
        "psi",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    // binary functions are pointwise non-commutative: psi must fail
    let out = run(&[
        "check",
        "--species",
        "binary",
        "--cap",
        "3",
        "--checks",
        "psi",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn twist_species_is_reachable() {
    let out = run(&[
        "check",
        "--species",
        "twist",
        "--cap",
        "4",
        "--checks",
        "inject,natural,d1,partition",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
