//! End-to-end tests that run the `minlate` binary and check its output and
//! exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

/// Eight jobs whose rejection sequence exercises every part of the trace.
const MOORE_CSV: &str = "job,p,d,w\n\
                         1,4,6,7\n\
                         2,1,8,10\n\
                         3,6,9,5\n\
                         4,3,11,8\n\
                         5,6,20,5\n\
                         6,8,25,3\n\
                         7,7,28,4\n\
                         8,10,35,1\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minlate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("binary exits normally")
}

fn write_fixture(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).expect("fixture writes");
    path.to_str().expect("path is UTF-8").to_string()
}

/// Collapses runs of whitespace so table alignment does not matter.
fn squeeze(line: &str) -> String {
    line.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[test]
fn solve_prints_the_worked_example() {
    let dir = tempdir().unwrap();
    let file = write_fixture(dir.path(), "moore.csv", MOORE_CSV);
    let output = run(&["solve", &file, "--trace"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("Rejected Jobs: 3, 6"), "stdout: {stdout}");
    assert!(stdout.contains("2 late, 6 on time"), "stdout: {stdout}");
    let squeezed: Vec<String> = stdout.lines().map(squeeze).collect();
    for expected in [
        "EDD sequence: | 1 2 3 4 5 6 7 8 | Rejected Jobs",
        "Completion time: | 4 5 11 |",
        "Completion time: | 4 5 * | 3",
        "Completion time: | 4 5 * 8 14 22 29 | 3",
        "Completion time: | 4 5 * 8 14 * 21 | 3, 6",
        "Completion time: | 4 5 * 8 14 * 21 31 | 3, 6",
    ] {
        assert!(
            squeezed.iter().any(|line| line == expected),
            "missing {expected:?} in:\n{stdout}"
        );
    }
}

#[test]
fn solve_json_round_trips_the_solution() {
    let dir = tempdir().unwrap();
    let file = write_fixture(dir.path(), "moore.csv", MOORE_CSV);
    let output = run(&["solve", &file, "--weighted", "--json"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert_eq!(stdout.lines().count(), 1, "one JSON line: {stdout}");
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid JSON");
    assert_eq!(value["num_late"], 2);
    assert_eq!(value["weighted_late"], 8);
    assert_eq!(value["rejected"], serde_json::json!([3, 6]));
    assert_eq!(value["on_time"], serde_json::json!([1, 2, 4, 5, 7, 8]));
    assert_eq!(value["completions"]["8"], 31);
    assert_eq!(value["completions"].as_object().unwrap().len(), 6);
}

#[test]
fn fast_solver_prints_the_same_schedule() {
    let dir = tempdir().unwrap();
    let file = write_fixture(dir.path(), "moore.csv", MOORE_CSV);
    let naive = run(&["solve", &file]);
    let fast = run(&["solve", &file, "--algo", "fast"]);
    assert_eq!(exit_code(&naive), 0);
    assert_eq!(exit_code(&fast), 0);
    assert_eq!(stdout_of(&naive), stdout_of(&fast));
}

#[test]
fn an_empty_instance_reports_zero_late() {
    let dir = tempdir().unwrap();
    let file = write_fixture(dir.path(), "empty.csv", "job,p,d\n");
    let output = run(&["solve", &file]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout_of(&output).contains("0 late"));
}

#[test]
fn usage_and_input_errors_exit_one() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let output = run(&["solve", missing.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);

    let bad = write_fixture(dir.path(), "bad.csv", "job,p\n1,2\n");
    let output = run(&["solve", &bad]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr_of(&output).contains("line 1"));

    let moore = write_fixture(dir.path(), "moore.csv", MOORE_CSV);
    let output = run(&["solve", &moore, "--trace", "--algo", "fast"]);
    assert_eq!(exit_code(&output), 1);
    let output = run(&["solve", &moore, "--weighted", "--algo", "fast"]);
    assert_eq!(exit_code(&output), 1);

    let output = run(&["no-such-command"]);
    assert_eq!(exit_code(&output), 1);
}

#[test]
fn weighted_solve_requires_opposite_ordering() {
    let dir = tempdir().unwrap();
    // The longer job carries the larger weight, so the precondition fails.
    let file = write_fixture(dir.path(), "skew.csv", "job,p,d,w\n1,2,5,1\n2,5,9,9\n");
    let output = run(&["solve", &file, "--weighted"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("oppositely ordered"));
    // Unweighted solving of the same file is fine.
    let output = run(&["solve", &file]);
    assert_eq!(exit_code(&output), 0);
}

#[test]
fn verify_passes_on_random_instances() {
    let output = run(&["verify", "--count", "60", "--max-n", "8", "--seed", "5"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("all checks passed"), "stdout: {stdout}");
    for check in ["opt", "prop1", "lemma1", "induction", "fast-equiv"] {
        assert!(stdout.contains(check), "missing {check}: {stdout}");
    }
}

#[test]
fn verify_supports_weighted_and_subsets() {
    let output = run(&[
        "verify", "--count", "40", "--weighted", "--checks", "opt,fast-equiv",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("opt"));
    assert!(!stdout.contains("lemma1"), "stdout: {stdout}");

    let output = run(&["verify", "--count", "0"]);
    assert_eq!(exit_code(&output), 0);

    let output = run(&["verify", "--max-n", "21"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr_of(&output).contains("at most 20"));
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let args = [
        "gen", "-n", "6", "--seed", "1", "--p-max", "10", "--d-mode", "tight",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(stdout_of(&first), stdout_of(&second));
    assert_eq!(
        stdout_of(&first),
        "job,p,d\n1,9,0\n2,8,10\n3,0,22\n4,7,18\n5,7,36\n6,1,38\n"
    );

    let dir = tempdir().unwrap();
    let path = dir.path().join("gen.csv");
    let output = run(&[
        "gen",
        "-n",
        "12",
        "--seed",
        "9",
        "--weighted-opposite",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let output = run(&["solve", path.to_str().unwrap(), "--weighted"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
}

#[test]
fn gen_families_and_conflicts() {
    let output = run(&["gen", "-n", "3", "--family", "all_late"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_of(&output), "job,p,d\n1,1,0\n2,1,0\n3,1,0\n");

    let output = run(&["gen", "-n", "3", "--family", "all_late", "--seed", "4"]);
    assert_eq!(exit_code(&output), 1);

    let output = run(&["gen", "-n", "3", "--family", "no_such_family"]);
    assert_eq!(exit_code(&output), 1);
}

#[test]
fn bench_times_a_small_instance() {
    let output = run(&["bench", "-n", "3000", "--repeat", "2"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("solvers agree"), "stdout: {stdout}");
    assert!(stdout.contains("jobs/s"), "stdout: {stdout}");

    let output = run(&["bench", "-n", "1000", "--algo", "naive", "--repeat", "1"]);
    assert_eq!(exit_code(&output), 0);

    let output = run(&["bench", "-n", "1000", "--repeat", "0"]);
    assert_eq!(exit_code(&output), 1);
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["solve", "--help"][..]] {
        let output = run(args);
        assert_eq!(exit_code(&output), 0, "args: {args:?}");
    }
}
