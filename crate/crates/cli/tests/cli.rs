//! End-to-end behavior of the `ifn` binary: flags, listing, messages and
//! report round-trips.

use std::path::{Path, PathBuf};
use std::process::Command;

fn ifn() -> &'static str {
    env!("CARGO_BIN_EXE_ifn")
}

fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let output = Command::new(ifn())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

fn write_cfg(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn list_is_sorted_unique_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = run_in(dir.path(), &["list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = stdout
        .lines()
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    assert!(names.contains(&"square"));
    assert!(names.contains(&"poly2map"));
    let mut sorted = names.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(names, sorted);
    let (_, second, _) = run_in(dir.path(), &["list"]);
    assert_eq!(stdout, second);
}

#[test]
fn derivative_estimates_when_no_candidate_is_given() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(dir.path(), "est.cfg", "function = exp\nx0 = 0\n");
    let (code, stdout, _) = run_in(
        dir.path(),
        &["derivative", "--config", "est.cfg", "--out", "est.json"],
    );
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("estimated candidate"), "{stdout}");
}

#[test]
fn flags_override_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "c.cfg",
        "function = square\nx0 = 1\ncandidate = 2\nseed = 7\nout = from-config.json\n",
    );
    let (code, _, _) = run_in(
        dir.path(),
        &[
            "derivative",
            "--config",
            "c.cfg",
            "--seed",
            "11",
            "--alpha",
            "0.01",
            "--t-grid",
            "0.5,5",
            "--out",
            "flagged.json",
        ],
    );
    assert_eq!(code, 0);
    assert!(dir.path().join("flagged.json").exists());
    assert!(!dir.path().join("from-config.json").exists());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("flagged.json")).unwrap())
            .unwrap();
    assert_eq!(report["seed"], 11);
    assert_eq!(report["params"]["t_grid"].as_array().unwrap().len(), 2);
    assert!((report["params"]["alpha"].as_f64().unwrap() - 0.01).abs() < 1e-15);
}

#[test]
fn unknown_function_suggests_nearest_names() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "c.cfg",
        "function = squar\nx0 = 1\ncandidate = 2\n",
    );
    let (code, _, stderr) = run_in(dir.path(), &["derivative", "--config", "c.cfg"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown function 'squar'"), "{stderr}");
    assert!(stderr.contains("square"), "{stderr}");
}

#[test]
fn alpha_validation_message() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "c.cfg",
        "function = square\nx0 = 1\nalpha = 1.5\n",
    );
    let (code, _, stderr) = run_in(dir.path(), &["derivative", "--config", "c.cfg"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("alpha must lie in (0,1)"), "{stderr}");
}

#[test]
fn unknown_key_is_line_precise() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(dir.path(), "c.cfg", "function = square\nnot_a_key = 1\n");
    let (code, _, stderr) = run_in(dir.path(), &["derivative", "--config", "c.cfg"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");
    assert!(stderr.contains("not_a_key"), "{stderr}");
}

#[test]
fn degenerate_frechet_point_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "c.cfg",
        "function = poly2map\nx0 = [1, 2]\ncandidate = [[2,0],[2,1]]\npoints = [[1,2]]\n",
    );
    let (code, _, stderr) = run_in(dir.path(), &["frechet", "--config", "c.cfg"]);
    assert_eq!(code, 2);
    assert!(
        stderr.contains("x = x0 excluded: denominators vanish by axioms (iii)/(viii)"),
        "{stderr}"
    );
}

#[test]
fn missing_config_file_is_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, stderr) = run_in(dir.path(), &["derivative", "--config", "missing.cfg"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"), "{stderr}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run_in(dir.path(), &["no-such-subcommand"]);
    assert_eq!(code, 2);
}

#[test]
fn report_round_trip_reproduces_the_verdict() {
    // Re-running with the parameters echoed in a report reproduces the
    // verdict, via flags mirroring the echoed values.
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "first.cfg",
        "function = cube\nx0 = 0.5\ncandidate = 0.85\nseed = 123\n",
    );
    let (code, _, _) = run_in(
        dir.path(),
        &["derivative", "--config", "first.cfg", "--out", "first.json"],
    );
    assert_eq!(code, 1, "0.85 is off the true slope 0.75");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("first.json")).unwrap())
            .unwrap();
    let seed = report["seed"].as_u64().unwrap().to_string();
    let alpha = format!("{}", report["params"]["alpha"].as_f64().unwrap());
    let grid = report["params"]["t_grid"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| format!("{}", v.as_f64().unwrap()))
        .collect::<Vec<_>>()
        .join(",");
    let (code, _, _) = run_in(
        dir.path(),
        &[
            "derivative",
            "--config",
            "first.cfg",
            "--seed",
            &seed,
            "--alpha",
            &alpha,
            "--t-grid",
            &grid,
            "--out",
            "second.json",
        ],
    );
    assert_eq!(code, 1);
    let second: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("second.json")).unwrap())
            .unwrap();
    assert_eq!(report["verdict"], second["verdict"]);
}

#[test]
fn single_theorem_selection() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "c.cfg",
        "theorem = chain_rule\nsample_count = 300\n",
    );
    let (code, stdout, _) = run_in(
        dir.path(),
        &["theorems", "--config", "c.cfg", "--out", "chain.json"],
    );
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("chain_rule: pass"), "{stdout}");
    write_cfg(dir.path(), "bad.cfg", "theorem = nope\n");
    let (code, _, stderr) = run_in(dir.path(), &["theorems", "--config", "bad.cfg"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown theorem"), "{stderr}");
}

#[test]
fn continuity_checks_from_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    write_cfg(
        dir.path(),
        "ok.cfg",
        "function = sin\nx0 = 0.3\nsample_count = 200\n",
    );
    let (code, _, _) = run_in(dir.path(), &["continuity", "--config", "ok.cfg"]);
    assert_eq!(code, 0);
    write_cfg(
        dir.path(),
        "bad.cfg",
        "function = step\nx0 = 0\nsample_count = 200\n",
    );
    let (code, _, _) = run_in(dir.path(), &["continuity", "--config", "bad.cfg"]);
    assert_eq!(code, 1);
}
