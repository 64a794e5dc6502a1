use std::fs;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-ladder"))
        .args(args)
        .env_remove(zeta_ladder_cli::CACHE_ENV)
        .output()
        .expect("launch cli")
}

#[test]
fn missing_height_is_a_usage_error() {
    let out = cli(&["--experiment", "thm1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--T"));
}

#[test]
fn bad_arguments_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for args in [
        vec!["--T", "1e3", "--out", out],
        vec!["--T", "1e5", "--x", "2.0", "--out", out],
        vec!["--T", "1e5", "--experiment", "thm9", "--out", out],
        vec!["--T", "1e5", "--band-overrides", "no_such_band=0:1", "--out", out],
        vec!["--T", "1e5", "--epsilon", "0.5", "--out", out],
    ] {
        assert_eq!(cli(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn selfcheck_writes_manifest_with_oracle_diff() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "--experiment",
        "selfcheck",
        "--T",
        "1e5",
        "--out",
        dir.path().to_str().unwrap(),
        "--workers",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let diff = manifest["oracle_max_diff"].as_f64().unwrap();
    assert!(diff > 0.0 && diff < 1e-4);
    assert!(manifest["failures"].as_array().unwrap().is_empty());
    assert_eq!(manifest["experiments"][0]["id"], "selfcheck");
    assert!(manifest["quad_hash"].as_str().unwrap().len() == 16);
}

#[test]
fn theorem_one_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "--experiment",
        "thm1",
        "--T",
        "1e5",
        "--x",
        "1.5708",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("thm1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(zeta_ladder_cli::output::CSV_HEADER));
    let g1: Vec<&str> = lines.find(|l| l.starts_with("thm1,thm1_g1,")).unwrap().split(',').collect();
    assert_eq!(g1.len(), 8);
    let (lhs, rhs, ratio): (f64, f64, f64) = (g1[2].parse().unwrap(), g1[3].parse().unwrap(), g1[5].parse().unwrap());
    assert_eq!(ratio, lhs / rhs);
    assert!(!text.contains('\r'));
}

#[test]
fn json_format_and_band_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "--experiment",
        "thm3",
        "--T",
        "1e5",
        "--format",
        "json",
        "--band-overrides",
        "thm3_scaled_residual=0:1e-9",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    // a band failure is reported but does not fail the run
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("thm3.json")).unwrap()).unwrap();
    let x = rows.as_array().unwrap().iter().find(|r| r["label"] == "thm3_x_form").unwrap();
    assert_eq!(x["pass"], false);
    assert_eq!(x["gate"], "band");
}

#[test]
fn failed_hard_gate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "--experiment",
        "selfcheck",
        "--T",
        "1e5",
        "--band-overrides",
        "oracle_max_diff=0:1e-12",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let failures = manifest["failures"].as_array().unwrap();
    assert!(failures
        .iter()
        .any(|f| f.as_str().unwrap().contains("selfcheck_oracle_max_diff")));
}
