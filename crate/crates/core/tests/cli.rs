use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_switchbound"))
}

fn system(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("systems").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_prints_an_interval() {
    let o = run(&["compute", s(&system("example1.json")), "--width", "0.05"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("sigma in ["), "{text}");
    assert!(text.contains("periodic law"));
}

#[test]
fn check_stability_verdicts() {
    let o = run(&["check-stability", s(&system("example1.json"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("STABLE"));
    let o = run(&["check-stability", s(&system("table1.json"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("UNSTABLE"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"modes\": [[[1]]]}").unwrap();
    assert_eq!(code(&run(&["compute", s(&bad)])), 2);
    assert_eq!(code(&run(&["compute", s(&dir.path().join("missing.json"))])), 2);
    assert_eq!(code(&run(&["compute", s(&system("table1.json")), "--hull", "round"])), 2);
    let rot = dir.path().join("rot.json");
    std::fs::write(&rot, r#"{"modes": [[[0, 1], [-1, 0]], [[-1, 0], [0, 1]]], "lower": [1, 1], "upper": [2, 2]}"#).unwrap();
    assert_eq!(code(&run(&["compute", s(&rot), "--hull", "pos"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn infinite_bounds_exit_3() {
    let o = run(&["compute", s(&system("stable_pair.json"))]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mode 2"));
}

#[test]
fn missing_artifacts_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    std::fs::write(&report, "{\"lo\": 0.0}").unwrap();
    let o = run(&["export", s(&report), "--out", s(&dir.path().join("poly"))]);
    assert_eq!(code(&o), 4);
}

#[test]
fn cut_tail_reduces_then_compute_runs() {
    let dir = tempfile::tempdir().unwrap();
    let reduced = dir.path().join("reduced.json");
    let o = run(&["cut-tail", s(&system("stable_pair.json")), "--simplify", "reduce", "--out", s(&reduced)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("mode 1: M 5 -> "));
    assert!(dir.path().join("reduced.changes.json").exists());
    assert!(stdout(&o).contains("mode 2: M inf -> "));
    let o = run(&["check-stability", s(&reduced)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("STABLE"));

    let cancelled = dir.path().join("cancelled.json");
    let o = run(&["cut-tail", s(&system("stable_pair.json")), "--simplify", "cancel", "--out", s(&cancelled)]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["compute", s(&cancelled)])), 3);

    let o = run(&["cut-tail", s(&system("example1.json"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("skipped (unstable)"));
}

#[test]
fn cut_tail_on_a_bare_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("a.json");
    std::fs::write(&m, "[[-1, 0], [0, -2]]").unwrap();
    let o = run(&["cut-tail", s(&m)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0.881373587"), "{}", stdout(&o));
}

#[test]
fn oracle_and_simulate() {
    let o = run(&["oracle", s(&system("example2.json")), "--max-legs", "2", "--grid-points", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("sigma >= -0.333333333333"), "{}", stdout(&o));

    let o = run(&[
        "simulate",
        s(&system("example2.json")),
        "--law",
        s(&system("example2_law.json")),
        "--x0",
        "1",
        "--step",
        "0.5",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("3,"));
    let x: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!((x - (-1.0f64).exp()).abs() < 1e-12);
}

#[test]
fn export_writes_one_file_per_space() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = run(&["compute", s(&system("table2.json")), "--width", "0.05", "--out", s(&report)]);
    assert_eq!(code(&o), 0);
    let poly = dir.path().join("poly");
    let o = run(&["export", s(&report), "--out", s(&poly)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut files: Vec<_> = std::fs::read_dir(&poly).unwrap().map(|e| e.unwrap().file_name()).collect();
    files.sort();
    assert_eq!(files.len(), 2, "{files:?}");
}

#[test]
fn manifest_replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let report = dir.path().join("report.json");
    let o = run(&[
        "compute",
        s(&system("table2.json")),
        "--seed",
        "7",
        "--width",
        "0.05",
        "--out",
        s(&report),
        "--manifest",
        s(&manifest),
    ]);
    assert_eq!(code(&o), 0);
    let first = std::fs::read(&report).unwrap();
    let o = run(&["run", s(&manifest)]);
    assert_eq!(code(&o), 0);
    assert_eq!(first, std::fs::read(&report).unwrap());
}
