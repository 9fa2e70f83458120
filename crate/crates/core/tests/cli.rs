//! Runs the `zhat` binary end to end.

use std::process::{Command, Output};

fn zhat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zhat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spec_prints_six_points_as_json() {
    let out = zhat(&["spec", "--primes", "2,3,5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let points = listing.as_array().unwrap();
    assert_eq!(points.len(), 6);
    let levels: Vec<&str> = points.iter().map(|p| p["level"].as_str().unwrap()).collect();
    assert_eq!(levels, ["minimal", "maximal"].repeat(3));
}

#[test]
fn pm_ring_suite_passes_on_four_primes() {
    let out = zhat(&["verify", "--suite", "pm-ring", "--primes", "2,3,5,7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS pm-ring"));
    assert!(stdout(&out).ends_with("1/1 suites passed\n"));
}

#[test]
fn corrupted_witness_exits_nonzero() {
    let out = zhat(&["verify", "--corrupt", "division-witness"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL division-witness"));
    assert!(text.contains("18/19 suites passed"));
}

#[test]
fn verify_reports_are_byte_identical() {
    let args = ["verify", "--primes", "2,3,5,7", "--seed", "42", "--json"];
    let (a, b) = (zhat(&args), zhat(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = zhat(&["verify", "--primes", "2,3,5,7", "--seed", "43", "--json"]);
    assert_ne!(a.stdout, other.stdout, "the seed should change the sampled cases");
}

#[test]
fn usage_errors_exit_two_and_name_the_field() {
    let out = zhat(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`suite`"));
    let out = zhat(&["ideal", "--gens", "1,2;x,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`gens`"));
    assert_eq!(zhat(&["spec", "--precision", "two"]).status.code(), Some(2));
    assert_eq!(zhat(&["--help"]).status.code(), Some(0));
}

#[test]
fn ideal_membership_and_primality() {
    let out = zhat(&[
        "ideal", "--gens", "1,3,1", "--member", "5,9,-1", "--member", "1,1,1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exponents"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(v["prime"], "m_3");
    assert_eq!(v["filter"]["base"], serde_json::json!([3]));
    assert_eq!(v["membership"][0]["member"], true);
    assert_eq!(v["membership"][1]["member"], false);
}
