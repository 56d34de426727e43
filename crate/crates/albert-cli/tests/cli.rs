use std::process::{Command, Output};

fn albert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_albert")).args(args).env_remove("ALBERT_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = albert(&["verify", "--suite", "foo"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_suite_in_config_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("albert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"suite": "foo"}"#).unwrap();
    let o = albert(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = albert(&["verify", "--config", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn octonion_suite_passes_with_json_schema() {
    let o = albert(&["verify", "--suite", "octonion", "--samples", "40", "--seed", "42", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["suite"], "octonion");
    assert_eq!(v["seed"], 42);
    assert!(v["elapsed_ms"].is_u64());
    for c in v["cases"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
        for key in ["name", "measured", "expected", "abs_error", "rel_error"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
}

#[test]
fn reports_are_deterministic_under_a_seed() {
    let run = || {
        let mut v =
            json(&albert(&["verify", "--suite", "jordan", "--samples", "15", "--seed", "9", "--format", "json"]));
        v["elapsed_ms"] = serde_json::Value::Null;
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn flags_override_config_and_env_sets_seed() {
    let dir = std::env::temp_dir().join(format!("albert-cli-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.json");
    std::fs::write(&path, r#"{"suite": "octonion", "samples": 10, "seed": 5, "format": "json"}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&albert(&["verify", "--config", p]));
    assert_eq!(v["seed"], 5);
    assert_eq!(v["config"]["samples"], 10);
    let v = json(&albert(&["verify", "--config", p, "--seed", "11"]));
    assert_eq!(v["seed"], 11);
    let o = Command::new(env!("CARGO_BIN_EXE_albert"))
        .args(["verify", "--suite", "octonion", "--samples", "5", "--format", "json"])
        .env("ALBERT_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 123);
}

#[test]
fn atlas_report_carries_the_pairing_constant() {
    let o = albert(&["verify", "--suite", "atlas", "--samples", "5", "--format", "json"]);
    let v = json(&o);
    let cases = v["cases"].as_array().unwrap();
    let pairing: Vec<_> =
        cases.iter().filter(|c| c["status"] == "reported" && c["name"].as_str().unwrap().contains("pairing")).collect();
    assert!(!pairing.is_empty());
    assert!((pairing[0]["measured"].as_f64().unwrap() - 32.0).abs() < 1e-6);
    assert!(pairing[0]["provenance"].is_string());
}

#[test]
fn dims_table() {
    let o = albert(&["dims", "--max-k", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    let dim_i: Vec<_> = rows.iter().map(|r| r["dim_i"].as_str().unwrap().to_string()).collect();
    assert_eq!(dim_i, ["1", "1", "2", "3", "4", "5", "7"]);
    assert_eq!(rows[2]["dim_h"], "350");
    assert_eq!(v["poincare_identity"], true);
}

#[test]
fn bargmann_table_json() {
    let o = albert(&["bargmann", "--epsilon", "-11.75", "--max-k", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["regime"], "isomorphism");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for key in ["k", "log_bk", "log_ak", "logN2", "regime"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
    let o = albert(&["bargmann", "--epsilon", "-30", "--max-k", "5"]);
    assert_eq!(o.status.code(), Some(1), "pole at k = 0 for ε = −30 is a runtime error");
}

#[test]
fn bargmann_mc_small_run() {
    let o = albert(&["bargmann-mc", "--k", "0", "--samples", "200000", "--seed", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    let ratio = v["estimate"]["ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
}

#[test]
fn constants_at_a1() {
    let v = json(&albert(&["constants", "--point", "a1", "--format", "json"]));
    assert!((v["norm_a"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["g0"].as_f64().unwrap() - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-15);
    assert!((v["log2_c1"].as_f64().unwrap() - 25.0).abs() < 1e-9);
}

#[test]
fn operators_table_exit_code_ignores_reported_rows() {
    let o = albert(&["operators"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Delta(T2) = 198"));
    assert!(text.contains("REPORTED"));
}
