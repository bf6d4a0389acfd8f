//! End-to-end tests of the command line binary: construction round trips,
//! analysis verdicts with their exit codes, and export formats.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arqlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("arqlab-cli-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn make(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    stdout(&o)
}

#[test]
fn make_nakayama_emits_the_exact_text_format() {
    let text = make(&["make", "nakayama", "3", "2"]);
    assert_eq!(
        text,
        "arqlab v1\nfield Q\nvertices 3\narrow a1 1 2\narrow a2 2 3\narrow a3 3 1\n\
         relation a1*a2\nrelation a2*a3\nrelation a3*a1\n"
    );
    // Identical invocations are byte-identical.
    assert_eq!(make(&["make", "nakayama", "3", "2"]), text);
}

#[test]
fn make_round_trips_through_the_parser() {
    let text = make(&["make", "nakayama", "4", "3"]);
    let path = tmp_file("roundtrip", &text);
    let o = run_stdin(&["indec", "-"], &text);
    assert!(o.status.success());
    // N(4,3): 4 projectives + uniserials of length 1 and 2 = 12 lines.
    assert_eq!(stdout(&o).lines().count(), 12);
    let o = run(&["indec", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), 12);
}

#[test]
fn indec_counts_the_uniserials() {
    let text = make(&["make", "nakayama", "3", "2"]);
    let o = run_stdin(&["indec", "-"], &text);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("P(1) [1,1,0] projective injective"));
}

#[test]
fn short_cycles_exit_codes_follow_the_verdict() {
    let free = make(&["make", "nakayama", "3", "2"]);
    let o = run_stdin(&["short-cycles", "-"], &free);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: short-cycle-free"));

    let cyclic = make(&["make", "nakayama", "2", "2"]);
    let o = run_stdin(&["short-cycles", "-"], &cyclic);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("verdict: has-short-cycle"));
    assert!(out.contains("witness: P(1) -> P(2) -> P(1)"));
}

#[test]
fn theorem_check_emits_a_passing_json_certificate() {
    let a3 = make(&["make", "linear", "3"]);
    let path = tmp_file("a3", &a3);
    let t3 = make(&["make", "trivext", path.to_str().unwrap(), "3"]);
    let o = run_stdin(&["theorem-check", "-"], &t3);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(cert["verdict"], "short-cycle-free");
    assert_eq!(cert["hereditary_type"], "A3");
    assert_eq!(cert["witness"], serde_json::Value::Null);
    assert_eq!(cert["residual_idempotents"].as_array().unwrap().len(), 3);
    let checks = cert["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["ok"].as_bool().unwrap()));

    let t2 = make(&["make", "trivext", path.to_str().unwrap(), "2"]);
    let o = run_stdin(&["theorem-check", "-"], &t2);
    assert_eq!(o.status.code(), Some(3));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(cert["verdict"], "has-short-cycle");
    assert!(cert["witness"].is_object());
}

#[test]
fn slices_lists_singletons_for_the_three_cycle() {
    let free = make(&["make", "nakayama", "3", "2"]);
    let o = run_stdin(&["slices", "-"], &free);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out
        .lines()
        .all(|l| l.contains("semiregular=false double-rigid=true")));
}

#[test]
fn export_dot_draws_boxes_and_dashed_translates() {
    let free = make(&["make", "nakayama", "3", "2"]);
    let o = run_stdin(&["export", "dot", "-"], &free);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph ar_quiver {"));
    assert_eq!(dot.matches("shape=box").count(), 3);
    assert_eq!(dot.matches("style=dashed").count(), 3);
}

#[test]
fn parameter_and_parse_errors_exit_2() {
    let o = run_stdin(&["indec", "-"], "not an algebra file\n");
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["make", "nakayama", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["make", "frobenius", "1"]);
    assert_eq!(o.status.code(), Some(2));

    // Characteristic guard: GF(5) cannot host an 18-dimensional algebra.
    let o = run(&["make", "nakayama", "6", "3", "--field", "gf:5"]);
    assert_eq!(o.status.code(), Some(2));

    // Non-selfinjective input to theorem-check.
    let a3 = make(&["make", "linear", "3"]);
    let o = run_stdin(&["theorem-check", "-"], &a3);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_budgets_exit_4() {
    let free = make(&["make", "nakayama", "3", "2"]);
    let o = run_stdin(&["indec", "-", "--budget-nodes", "2"], &free);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn gf_field_flag_is_threaded_through() {
    let text = make(&["make", "nakayama", "3", "2", "--field", "gf:7"]);
    assert!(text.contains("field GF(7)"));
    let o = run_stdin(&["theorem-check", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn brauer_star_matches_the_nakayama_invariants() {
    // The 2-edge multiplicity-2 star is Morita equivalent to N(2,5): same
    // vertex count, dimension, and uniserial structure.
    let star = make(&["make", "brauer", "star", "2", "2"]);
    let o = run_stdin(&["indec", "-"], &star);
    assert!(o.status.success());
    let star_lines = stdout(&o).lines().count();
    let nak = make(&["make", "nakayama", "2", "5"]);
    let o = run_stdin(&["indec", "-"], &nak);
    assert_eq!(stdout(&o).lines().count(), star_lines);
}
