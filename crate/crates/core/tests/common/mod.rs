// Shared helpers for the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Signed;
use partisan_symmetry::election::Election;
use partisan_symmetry::io::election_from_json;
use partisan_symmetry::metrics::{efficiency_gap, mean_median, partisan_bias};
use partisan_symmetry::rational::{parse_rational, Exact, Rational};
use serde_json::Value;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every `<name>.json` election that has a `<name>.expected.json` sidecar.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter_map(|f| f.strip_suffix(".expected.json").map(str::to_string))
        .collect();
    names.sort();
    names
}

pub fn load_fixture(name: &str) -> Election {
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{name}.json"))).expect("fixture file");
    election_from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn quantity(e: &Election, key: &str) -> Rational {
    match key {
        "v" => e.vote_share(),
        "s" => e.seat_share().s(),
        "mm" => mean_median(e),
        "pb" => partisan_bias(e),
        "mm_minus_pb" => mean_median(e) - partisan_bias(e),
        "eg" => efficiency_gap(e).expect("equal turnout"),
        other => panic!("unknown expected key {other}"),
    }
}

fn rational_field(v: &Value) -> Rational {
    parse_rational(v.as_str().expect("expected values are strings")).expect("expected value parses")
}

/// Compare a fixture with its sidecar; returns one message per mismatch.
pub fn check_fixture(name: &str) -> Vec<String> {
    let e = load_fixture(name);
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{name}.expected.json"))).expect("sidecar");
    let expected: Value = serde_json::from_str(&text).expect("sidecar JSON");
    let mut problems = Vec::new();
    if let Some(exact) = expected.get("exact").and_then(Value::as_object) {
        for (key, want) in exact {
            let (got, want) = (quantity(&e, key), rational_field(want));
            if got != want {
                problems.push(format!("{name}.{key}: got {} want {}", Exact(&got), Exact(&want)));
            }
        }
    }
    if let Some(approx) = expected.get("approx").and_then(Value::as_object) {
        for (key, spec) in approx {
            let got = quantity(&e, key);
            let want = rational_field(&spec["value"]);
            let tol = rational_field(&spec["tolerance"]);
            if (&got - &want).abs() > tol {
                problems.push(format!("{name}.{key}: got {} want {} ± {}", Exact(&got), Exact(&want), Exact(&tol)));
            }
        }
    }
    problems
}
