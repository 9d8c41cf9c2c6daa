use std::process::{Command, Output};

fn dra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn normalize_odd_square() {
    let o = dra(&["normalize", "Xp1*Xp1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(2/H)*h*Xp2");
}

#[test]
fn printed_form_parses_back() {
    let first = dra(&["multiply", "Xp2", "Xm2"]);
    let printed = stdout(&first);
    let again = dra(&["normalize", printed.trim()]);
    assert_eq!(stdout(&again), printed);
}

#[test]
fn unicode_names() {
    let o = dra(&["--unicode", "normalize", "Xm1*Xp2"]);
    assert!(stdout(&o).contains("x₋α·x₂α"), "{}", stdout(&o));
}

#[test]
fn theta_is_an_involution() {
    let once = stdout(&dra(&["theta", "Xp1*Xm2*h"]));
    let twice = stdout(&dra(&["theta", once.trim()]));
    assert_eq!(stdout(&dra(&["normalize", "Xp1*Xm2*h"])), twice);
}

#[test]
fn harish_chandra_of_named_element() {
    let o = dra(&["hc", "C1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("phi = (2*H - 2)*h"), "{}", stdout(&o));
}

#[test]
fn ghost_check_exit_codes() {
    assert_eq!(dra(&["ghost-check", "Q2", "--n", "5", "--eps", "-1"]).status.code(), Some(0));
    assert_eq!(dra(&["ghost-check", "Q2", "--n", "4", "--eps", "1"]).status.code(), Some(2));
    assert_eq!(dra(&["ghost-check", "Xp1", "--n", "1", "--eps", "1"]).status.code(), Some(1));
}

#[test]
fn fn_methods_agree() {
    let closed = stdout(&dra(&["fn", "4"]));
    assert_eq!(stdout(&dra(&["fn", "4", "--recursive"])), closed);
    assert_eq!(stdout(&dra(&["fn", "4", "--oracle"])), closed);
    assert_eq!(dra(&["fn", "4", "--oracle", "--closed"]).status.code(), Some(2));
}

#[test]
fn shapovalov_degenerates_at_three() {
    let o = stdout(&dra(&["shapovalov", "--lambda", "H+2", "--size", "4"]));
    assert!(o.contains("<Xm1^3 v, Xm1^3 v> = 0"), "{o}");
    assert!(!o.contains("<Xm1^2 v, Xm1^2 v> = 0"), "{o}");
}

#[test]
fn irrep_json() {
    let o = dra(&["irrep", "--lambda", "3/2", "--mu", "-3/2", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["matrices"]["Xm1"][1][0], "1/1");
    let back = dra::json::irrep_from_json(&v).unwrap();
    assert!(back.relation_failures().unwrap().is_empty());
}

#[test]
fn irrep_latex_and_failure() {
    let o = stdout(&dra(&["irrep", "--lambda", "3/2", "--mu", "-3/2", "--emit", "latex"]));
    assert!(o.contains("\\begin{pmatrix}"));
    assert_eq!(dra(&["irrep", "--lambda", "2/3", "--mu", "1/3"]).status.code(), Some(1));
    assert_eq!(dra(&["irrep", "--lambda", "x", "--mu", "1/3"]).status.code(), Some(2));
}

#[test]
fn tensor_decompose_json() {
    let o = dra(&["tensor-decompose", "--ell", "1", "--max-degree", "8", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["singular_vectors"].as_array().unwrap().len(), 3);
    assert_eq!(v["passed"], true);
    assert_eq!(dra(&["tensor-decompose", "--ell", "2", "--max-degree", "3"]).status.code(), Some(2));
}

#[test]
fn suite_json_and_exit() {
    let o = dra(&["--json", "suite", "centrality"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dra(&["normalize", "Xp1 * (h"]).status.code(), Some(2));
    assert_eq!(dra(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(dra(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dra(&[]).status.code(), Some(2));
    assert_eq!(dra(&["--help"]).status.code(), Some(0));
}
