use std::process::{Command, Output};

use clap::ValueEnum;
use ospq::fixtures::FIXTURES;
use ospq::linalg::GradedMatrix;
use ospq_cli::{run_suite, Arity, Suite};

fn ospq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ospq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn contract_emits_the_golden_matrix() {
    let o = ospq(&["contract", "--j1", "1/2", "--j2", "1/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let ours = GradedMatrix::from_json(&stdout(&o)).unwrap();
    assert_eq!(ours, GradedMatrix::from_json(FIXTURES[0].json).unwrap());
}

#[test]
fn formula_source_matches_universal() {
    let a = ospq(&["contract", "--j1", "1/2", "--j2", "1", "--source", "formula"]);
    let b = ospq(&["contract", "--j1", "1/2", "--j2", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn h_substitution_commutes_with_contraction() {
    let o = ospq(&["contract", "--j1", "1/2", "--j2", "1", "--h", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let third = "1/3".parse().unwrap();
    let want = GradedMatrix::from_json(FIXTURES[1].json).unwrap().substitute_h(&third).unwrap();
    assert_eq!(GradedMatrix::from_json(&stdout(&o)).unwrap(), want);
}

#[test]
fn ybe_suite_passes() {
    assert_eq!(ospq(&["verify", "--suite", "ybe", "--j", "1/2", "1/2", "1/2"]).status.code(), Some(0));
}

#[test]
fn malformed_spin_is_a_usage_error() {
    assert_eq!(ospq(&["rep", "--variant", "q", "--j", "5/4"]).status.code(), Some(2));
    assert_eq!(ospq(&["rep", "--variant", "q", "--j", "-1/2"]).status.code(), Some(2));
    assert_eq!(ospq(&["verify", "--suite", "ode", "--order", "-3"]).status.code(), Some(2));
}

#[test]
fn wrong_spin_count_is_a_usage_error() {
    assert_eq!(ospq(&["verify", "--suite", "twist", "--j", "1/2"]).status.code(), Some(2));
}

#[test]
fn falsified_suite_exits_one() {
    let o = ospq(&["verify", "--suite", "r2-negative-control", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().nth(1).unwrap().contains(",fail,"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["verify", "--suite", "rll", "triangularity", "--j", "1/2", "1"];
    let (a, b) = (ospq(&args), ospq(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("wall_time_ms"));
    assert!(stdout(&ospq(&["--timing", "fixtures"])).contains("wall_time_ms"));
}

#[test]
fn fixtures_command_passes() {
    let o = ospq(&["fixtures", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS fixtures"));
}

#[test]
fn rep_tables_are_complete() {
    let o = ospq(&["rep", "--variant", "q", "--j", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert!(names.len() >= 3, "{names:?}");
    for m in v.as_object().unwrap().values() {
        assert_eq!(m["dim"], 5);
    }
}

#[test]
fn every_library_suite_is_reachable() {
    let cli: Vec<String> = Suite::value_variants().iter().map(|s| s.name()).collect();
    for s in ospq::SUITES {
        assert!(cli.iter().any(|c| c == s), "suite {s} has no CLI entry");
    }
    assert_eq!(cli.len(), ospq::SUITES.len());
}

#[test]
fn every_suite_runs_with_defaults() {
    for &s in Suite::value_variants() {
        if matches!(s, Suite::Ode | Suite::SeriesTwist) {
            continue;
        }
        let j = if s.arity() == Arity::None { vec![] } else { vec!["1/2".parse().unwrap()] };
        let j = if matches!(s.arity(), Arity::Pair | Arity::Triple) { vec![] } else { j };
        let reports = run_suite(s, &j, None, Some(1)).unwrap();
        assert!(!reports.is_empty(), "{}", s.name());
    }
}
