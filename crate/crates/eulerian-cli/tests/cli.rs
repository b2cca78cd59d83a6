//! End-to-end tests of the `eulerian` binary: golden outputs for the
//! documented examples, JSON round-trips, exit-code semantics, and the
//! environment cap override.

use std::process::{Command, Output};

use eulerian_core::poly::MultiPoly;

fn eulerian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = eulerian(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn compute_golden_outputs() {
    assert_eq!(
        stdout_of(&["compute", "--family", "TildeA", "--n", "5", "--eval", "q=-1"]).trim(),
        "1+7t+15t²+15t³+7t⁴+t⁵"
    );
    assert_eq!(
        stdout_of(&["compute", "--family", "HatA", "--n", "1"]).trim(),
        "1+t"
    );
    assert_eq!(
        stdout_of(&["compute", "--family", "A", "--n", "0"]).trim(),
        "1"
    );
    assert_eq!(
        stdout_of(&["compute", "--family", "AStar", "--n", "2", "--format", "latex"]).trim(),
        "1+3t+5t^{2}+3t^{3}+t^{4}"
    );
}

#[test]
fn compute_json_round_trips_byte_identically() {
    let out = stdout_of(&["compute", "--family", "TildeA", "--n", "4", "--format", "json"]);
    let poly = MultiPoly::from_json_str(out.trim()).unwrap();
    assert_eq!(poly.to_json_string(), out.trim());
    // deterministic across runs
    let again = stdout_of(&["compute", "--family", "TildeA", "--n", "4", "--format", "json"]);
    assert_eq!(out, again);
}

#[test]
fn stats_examples() {
    let out = stdout_of(&["stats", "--perm", "42513"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cros"], 2);
    assert_eq!(v["nest"], 1);
    assert_eq!(v["drop"], 2);
    assert_eq!(v["p231"], 2);
    assert_eq!(v["p312"], 2);
    assert_eq!(v["fmax"], 0);

    let v: serde_json::Value =
        serde_json::from_str(&stdout_of(&["stats", "--perm", "3142"])).unwrap();
    assert_eq!(v["ai"], 2);

    let v: serde_json::Value =
        serde_json::from_str(&stdout_of(&["stats", "--perm", "1"])).unwrap();
    assert_eq!(v["des"], 0);
    assert_eq!(v["valley"], 1);
    assert_eq!(v["fmax"], 1);

    let v: serde_json::Value =
        serde_json::from_str(&stdout_of(&["stats", "--perm", "(1 4 6 2)(3)(5 7)"])).unwrap();
    assert_eq!(v["cpeak"], 2);
    assert_eq!(v["cvalley"], 2);
    assert_eq!(v["cdrise"], 1);
    assert_eq!(v["cdfall"], 1);
    assert_eq!(v["fix"], 1);

    assert!(!eulerian(&["stats", "--perm", "1231"]).status.success());
}

#[test]
fn orbit_commands() {
    assert_eq!(
        stdout_of(&["orbits", "--perm", "63157248", "--hop", "5"]).trim(),
        "65317248"
    );
    let out = stdout_of(&["orbits", "--n", "2"]);
    assert!(out.contains("PRW_3 splits into 2 orbits"));
    assert!(out.contains("representative 123 size 4 ai 0"));
    assert!(out.contains("representative 132 size 1 ai 1"));
    // orbit sizes are powers of two for every listed orbit
    for line in out.lines().filter(|l| l.contains("size")) {
        let size: usize = line
            .split_whitespace()
            .skip_while(|w| *w != "size")
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert!(size.is_power_of_two());
    }
    assert!(!eulerian(&["orbits", "--perm", "231", "--prw-only"])
        .status
        .success());
}

#[test]
fn gamma_and_cf_outputs() {
    assert_eq!(
        stdout_of(&["gamma", "--family", "TildeA", "--n", "3"]).trim(),
        "[1, 2q+2q²]"
    );
    let out = stdout_of(&["cf", "--preset", "CF_tildeA", "--N", "2"]);
    assert!(out.contains("mu_2 = 1+3t+t²"));
    let json = stdout_of(&["cf", "--preset", "CF_tildeA", "--N", "2", "--json"]);
    let mus: Vec<MultiPoly> = serde_json::from_str(&json).unwrap();
    assert_eq!(mus.len(), 3);
    assert_eq!(mus[2], MultiPoly::parse("1+3t+t^2").unwrap());
}

#[test]
fn verify_command_and_exit_codes() {
    let out = eulerian(&["verify", "--id", "thm_1_1", "--max-n", "6"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));

    let out = eulerian(&["verify", "--all", "--max-n", "3", "--json"]);
    assert!(out.status.success());
    let reports: Vec<serde_json::Value> =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(reports.len(), 30);
    assert_eq!(reports[0]["id"], "eq_1_1");
    assert!(!eulerian(&["verify", "--id", "thm_9_9"]).status.success());
}

#[test]
fn conjecture_scans() {
    let out = eulerian(&["conjecture", "--which", "5.2", "--max-n", "14"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("CONJECTURE"));
    assert!(text.contains("pass"));
    let out = eulerian(&["conjecture", "--which", "5.1", "--max-n", "6"]);
    assert!(out.status.success());
    assert!(!eulerian(&["conjecture", "--which", "9.9"]).status.success());
}

#[test]
fn list_registry() {
    let out = stdout_of(&["list"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["families"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["family"] == "TildeA"));
    assert_eq!(v["identities"].as_array().unwrap().len(), 30);
}

#[test]
fn env_cap_override() {
    // A at n = 17 is above the registered cap 16, allowed with the override
    let denied = eulerian(&["compute", "--family", "A", "--n", "17"]);
    assert!(!denied.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(["compute", "--family", "A", "--n", "17"])
        .env("EULERIAN_MAX_N", "20")
        .output()
        .unwrap();
    assert!(out.status.success());
}
