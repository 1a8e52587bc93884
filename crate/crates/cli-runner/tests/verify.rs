mod common;

use common::*;

const SMALL_SUITE: &str = r#"
[[scenario]]
name = "ids"
kind = "identity_suite"

[scenario.geometry]
seed = 4
metrics = 4
points = 3
"#;

#[test]
fn small_suite_passes_and_lists_every_identity() {
    let tmp = tempfile::tempdir().unwrap();
    let (o, out) = run_config(tmp.path(), "verify", SMALL_SUITE, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("ids/identities.json")).unwrap()).unwrap();
    let rows: Vec<&serde_json::Value> =
        rep["unconditional"].as_array().unwrap().iter().chain(rep["conditional"].as_array().unwrap()).collect();
    assert_eq!(rows.len(), 7 + 12);
    for r in rows {
        let v = r["max_residual"].as_f64().unwrap();
        assert!(v <= 1e-7, "{}: {v:e}", r["identity"]);
    }
    assert!(rep["failures"].as_array().unwrap().is_empty());
}

#[test]
fn sabotaged_fixture_fails_with_the_identity_name() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = format!("{SMALL_SUITE}fixture = \"sabotaged_iwasawa\"\n");
    let (o, out) = run_config(tmp.path(), "verify", &cfg, &[]);
    assert_eq!(o.code, 1, "{}", o.stderr);
    assert!(o.stderr.contains("bismut_ricci_flat"), "{}", o.stderr);
    // the unconditional identities are untouched by the fixture
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("ids/identities.json")).unwrap()).unwrap();
    let failures: Vec<&str> = rep["failures"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(failures.iter().all(|f| !["chern_torsion", "lc2c", "ricci_decomp"].contains(f)), "{failures:?}");
}

#[test]
fn unknown_key_is_a_config_error_with_line() {
    let tmp = tempfile::tempdir().unwrap();
    let (o, _) = run_config(tmp.path(), "verify", &format!("{SMALL_SUITE}tolerence = 3\n"), &[]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line") && o.stderr.contains("tolerence"), "{}", o.stderr);
}

#[test]
fn wrong_subcommand_and_bad_flags_are_usage_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let (o, _) = run_config(tmp.path(), "flow", SMALL_SUITE, &[]);
    assert_eq!(o.code, 2, "{}", o.stderr);
    let (o, _) = run_config(tmp.path(), "verify", SMALL_SUITE, &["--jobs", "0"]);
    assert_eq!(o.code, 2);
    assert_eq!(cli(&["verify"]).code, 2);
    let missing = tmp.path().join("nope.toml");
    let o = cli(&["verify", "--config", missing.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("nope.toml"), "{}", o.stderr);
}

#[test]
fn eom_report_on_a_few_points() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = "[[scenario]]\nname = \"eom\"\nkind = \"eom_report\"\n[scenario.geometry]\npoints = 8\n";
    let (o, out) = run_config(tmp.path(), "verify", cfg, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("eom/eom.json")).unwrap()).unwrap();
    for k in ["div_h", "div_f", "einstein", "dilaton"] {
        assert!(rep[k].as_f64().unwrap() <= 1e-7, "{k}: {}", rep[k]);
    }
    assert!(std::fs::read_to_string(out.join("eom/eom.txt")).unwrap().contains("div_h"));
}

#[test]
fn seed_override_changes_the_suite() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, out) = run_config(tmp.path(), "verify", SMALL_SUITE, &["--seed", "9"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("ids/identities.json")).unwrap()).unwrap();
    assert_eq!(rep["seed"], 9);
}
