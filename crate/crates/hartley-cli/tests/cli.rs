//! Black-box tests of the `hartley` binary: file handling, exit codes,
//! report formats, and benchmark determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hartley"))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn transform_example_agrees_with_the_exact_three_point_values() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "in.csv", "1,2,3\n");
    let sqrt3 = 3.0f64.sqrt();
    let exact = [6.0, -(3.0 + sqrt3) / 2.0, -(3.0 - sqrt3) / 2.0];

    for mode in ["fast", "naive"] {
        let output_path = dir.path().join(format!("out-{mode}.csv"));
        let status = cli()
            .args(["transform", "--mode", mode, "--input"])
            .arg(&input)
            .arg("--output")
            .arg(&output_path)
            .status()
            .unwrap();
        assert!(status.success());
        let text = std::fs::read_to_string(&output_path).unwrap();
        let values: Vec<f64> = text
            .trim()
            .split(',')
            .map(|tok| tok.parse().unwrap())
            .collect();
        assert_eq!(values.len(), 3);
        for (value, expected) in values.iter().zip(exact) {
            assert!(
                (value - expected).abs() <= 1e-12,
                "{mode} mode: {value} vs {expected}"
            );
        }
    }
}

#[test]
fn written_decimals_are_shortest_round_trip_form() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "in.csv", "0.1,0.25,-0.7,1e-3,2.5\n");
    let out = dir.path().join("out.csv");
    let status = cli()
        .args(["transform", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    // Each written token must be the shortest decimal string that parses
    // back to the same binary value: parsing and re-formatting it must
    // reproduce the token exactly.
    let text = std::fs::read_to_string(&out).unwrap();
    let tokens: Vec<&str> = text.trim().split(',').collect();
    assert_eq!(tokens.len(), 5);
    for token in tokens {
        let value: f64 = token.parse().unwrap();
        assert_eq!(value.to_string(), token, "token {token:?} is not in canonical form");
    }
}

#[test]
fn unsupported_length_in_fast_mode_lists_the_supported_set() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "in.csv", "1,2,3,4,5,6,7\n");
    let output = cli()
        .args(["transform", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(dir.path().join("out.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    assert!(
        stderr.contains("3, 5, 6, 12, 24"),
        "message must list supported lengths: {stderr}"
    );
}

#[test]
fn naive_mode_round_trips_lengths_the_fast_path_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let original = [0.5, -1.25, 2.0, 0.0, 3.5, -0.125, 1.0];
    let input = write_file(
        dir.path(),
        "in.csv",
        &format!(
            "{}\n",
            original
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    );
    let forward = dir.path().join("fwd.csv");
    let back = dir.path().join("back.csv");
    for (src, dst, direction) in [(&input, &forward, "forward"), (&forward, &back, "inverse")] {
        let status = cli()
            .args(["transform", "--mode", "naive", "--direction", direction, "--input"])
            .arg(src)
            .arg("--output")
            .arg(dst)
            .status()
            .unwrap();
        assert!(status.success(), "naive mode must accept length 7");
    }
    let returned: Vec<f64> = std::fs::read_to_string(&back)
        .unwrap()
        .trim()
        .split(',')
        .map(|tok| tok.parse().unwrap())
        .collect();
    for (a, b) in original.iter().zip(&returned) {
        assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }
}

#[test]
fn mixed_lengths_in_one_file_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "in.csv", "1,2,3\n4,5\n");
    let output = cli()
        .args(["transform", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(dir.path().join("out.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("length"));
}

#[test]
fn parse_failures_name_the_offending_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "in.csv", "1,2,3\n4,oops,6\n");
    let output = cli()
        .args(["transform", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(dir.path().join("out.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    assert!(stderr.contains(":2:"), "line number missing: {stderr}");
    assert!(stderr.contains("oops"), "offending token missing: {stderr}");
}

#[test]
fn usage_errors_exit_with_code_two() {
    // Missing required flags.
    let output = cli().arg("transform").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    // Neither a blocklength nor --all.
    let output = cli().arg("verify").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    // Unknown subcommand.
    let output = cli().arg("frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    // Iteration counts below one are rejected by flag validation.
    let output = cli().args(["bench", "3", "--iters", "0"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn transform_counts_flag_reports_per_call_operations() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "in.csv", "1,2,3,4,5,6,7,8,9,10,11,12\n");
    let output = cli()
        .args(["transform", "--counts", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(dir.path().join("out.csv"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    assert!(stdout.contains("4 multiplications"), "stdout: {stdout}");
    assert!(stdout.contains("52 additions"), "stdout: {stdout}");
}

#[test]
fn verify_single_length_passes_and_absurd_tolerance_fails() {
    let status = cli().args(["verify", "12"]).status().unwrap();
    assert!(status.success());
    let output = cli()
        .args(["verify", "12", "--tol", "1e-300"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout_of(&output).contains("FAIL"));
}

#[test]
fn verify_rejects_lengths_without_kernels() {
    let output = cli().args(["verify", "7"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("3, 5, 6, 12, 24"));
}

#[test]
fn verify_json_report_is_machine_readable() {
    let output = cli().args(["verify", "--all", "--json"]).output().unwrap();
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(report["all_pass"], serde_json::Value::Bool(true));
    assert_eq!(report["tolerance"].as_f64().unwrap(), 1e-12);
    let kernels = report["kernels"].as_array().unwrap();
    assert_eq!(kernels.len(), 5);
    for record in kernels {
        assert!(record["pass"].as_bool().unwrap());
        assert!(record["dense_error"].as_f64().unwrap() <= 1e-12);
        assert!(record["oracle_error"].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn counts_json_breaks_down_the_five_point_multiplications() {
    let output = cli().args(["counts", "--json"]).output().unwrap();
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let five = report["kernels"]
        .as_array()
        .unwrap()
        .iter()
        .find(|record| record["n"] == 5)
        .unwrap();
    assert_eq!(five["multiplications"], 5);
    assert_eq!(five["irrational_multiplications"], 4);
    assert_eq!(five["rational_multiplications"], 1);
    assert_eq!(five["claimed_mul"], 3);
    assert_eq!(five["claimed_add"], 17);
    assert!(five["pass"].as_bool().unwrap());
}

#[test]
fn counts_table_flags_only_the_five_point_excess() {
    let output = cli().arg("counts").output().unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    let flagged: Vec<&str> = stdout
        .lines()
        .filter(|line| line.contains("over claim"))
        .collect();
    assert_eq!(flagged.len(), 1, "stdout: {stdout}");
    assert!(flagged[0].trim_start().starts_with('5'), "stdout: {stdout}");
}

#[test]
fn bench_outputs_are_deterministic_for_a_fixed_seed() {
    let run = || {
        let output = cli()
            .args(["bench", "5", "--iters", "50", "--seed", "7"])
            .output()
            .unwrap();
        assert!(output.status.success());
        stdout_of(&output)
            .lines()
            .filter(|line| line.contains("output check"))
            .map(str::to_owned)
            .collect::<Vec<_>>()
    };
    let first = run();
    let second = run();
    assert_eq!(first.len(), 1);
    assert_eq!(first, second, "output check lines must not depend on timing");
}

#[test]
fn json_transform_handles_several_signals_at_once() {
    let dir = tempfile::tempdir().unwrap();
    let originals = vec![vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![-0.5, 0.25, 0.0, 1.5, -2.0]];
    let input = write_file(
        dir.path(),
        "in.json",
        &serde_json::to_string(&originals).unwrap(),
    );
    let forward = dir.path().join("fwd.json");
    let back = dir.path().join("back.json");
    for (src, dst, direction) in [(&input, &forward, "forward"), (&forward, &back, "inverse")] {
        let status = cli()
            .args(["transform", "--format", "json", "--direction", direction, "--input"])
            .arg(src)
            .arg("--output")
            .arg(dst)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let returned: Vec<Vec<f64>> =
        serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert_eq!(returned.len(), 2);
    for (original, round_tripped) in originals.iter().zip(&returned) {
        for (a, b) in original.iter().zip(round_tripped) {
            assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }
}
