use std::process::{Command, Output};

use serde_json::Value;

fn tallini(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tallini"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_tallini_q2() {
    let out = tallini(&["verify-tallini", "--q", "2", "--a", "0", "--b", "1", "--c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(check(&v, "point_count")["got"], 7);
    assert_eq!(check(&v, "singular_points")["got"], 0);
    assert_eq!(check(&v, "base_points_fixed")["pass"], true);
}

#[test]
fn semigroup_q4() {
    let v = json(&tallini(&["semigroup", "--q", "4"]));
    assert_eq!(check(&v, "gap_count")["got"], 10);
}

#[test]
fn quotient_p2() {
    let out = tallini(&["quotient", "--p", "2", "--i", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&json(&out), "chains_passed")["got"], 3);
}

#[test]
fn hasse_witt_q4_non_ordinary() {
    let out = tallini(&["hasse-witt", "--q", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["ordinary"], false);
    assert_eq!(check(&v, "series_oracle_agrees")["pass"], true);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["semigroup", "--q", "6"][..],
        &["semigroup"],
        &["bogus"],
        &["quotient", "--p", "2", "--q", "4"],
    ] {
        let out = tallini(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn verification_failure_exits_1() {
    let out = tallini(&["automorphisms", "--q", "2", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(check(&v, "tangent_sampled")["got"], serde_json::json!([3, 3, 3, 3, 3]));
}

#[test]
fn spec_file_and_output() {
    let dir = std::env::temp_dir().join(format!("tallini-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("job.json");
    let out_path = dir.join("report.json");
    std::fs::write(
        &spec,
        format!(
            r#"{{"command": "divisors", "params": {{"q": 2}}, "output": "{}"}}"#,
            out_path.display()
        ),
    )
    .unwrap();
    let out = tallini(&["--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["command"], "divisors");
    assert!(v.get("timing_ms").is_none());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_flag() {
    let v = json(&tallini(&["semigroup", "--q", "3", "--timing"]));
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn reports_are_deterministic() {
    let a = tallini(&["equivalence", "--q", "2"]);
    let b = tallini(&["equivalence", "--q", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
