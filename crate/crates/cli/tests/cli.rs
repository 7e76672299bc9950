use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn scalefield(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_scalefield"));
    cmd.args(args).env_remove("SCALEFIELD_OUT");
    cmd
}

fn run(args: &[&str]) -> Output {
    scalefield(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn straight_geodesic_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", fixture("straight.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("01_geodesic.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("tau,q0,q1,q2,q3,v0,v1,v2,v3"));
    let v = [1.0, 0.5, -0.25, 0.0];
    let mut rows = 0;
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        for k in 0..4 {
            assert!((cells[1 + k] - v[k] * cells[0]).abs() < 1e-12);
        }
        rows += 1;
    }
    assert_eq!(rows, 11);
}

#[test]
fn pathlen_summary_holds_e_minus_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", fixture("pathlen.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let summary = fs::read_to_string(dir.path().join("summary.json")).unwrap();
    let key = "\"scaled_length\": ";
    let at = summary.find(key).unwrap() + key.len();
    let value: f64 = summary[at..].split(|c: char| c == ',' || c.is_whitespace()).next().unwrap().parse().unwrap();
    assert!((value - (std::f64::consts::E - 1.0)).abs() < 1e-8);
    assert!(summary.contains("\"steps\": 1000"));
}

#[test]
fn malformed_family_exits_2_with_line() {
    let out = run(&["run", fixture("bad_family.json").to_str().unwrap(), "--out", "/nonexistent/never"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("bad_family.json:4:"), "{err}");
    assert!(err.contains("fields.theta"), "{err}");
    assert_eq!(code(&run(&["validate", fixture("bad_family.json").to_str().unwrap()])), 2);
}

#[test]
fn validation_errors_exit_3() {
    let out = run(&["validate", fixture("unknown_path.json").to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("tasks[0].path"));
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", fixture("unknown_path.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn failed_task_exits_1_but_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", fixture("failing.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let summary = fs::read_to_string(dir.path().join("summary.json")).unwrap();
    assert!(summary.contains("\"status\": \"failed\""));
    assert!(dir.path().join("01_axioms.csv").exists());
}

#[test]
fn missing_file_is_an_io_error() {
    let out = run(&["validate", "/definitely/not/here.json"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn output_directory_precedence() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let scenario = fixture("straight.json");
    let out = scalefield(&["run", scenario.to_str().unwrap()]).env("SCALEFIELD_OUT", env_dir.path()).output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(env_dir.path().join("summary.json").exists());

    let fresh = tempfile::tempdir().unwrap();
    let out = scalefield(&["run", scenario.to_str().unwrap(), "--out", flag_dir.path().to_str().unwrap()])
        .env("SCALEFIELD_OUT", fresh.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(flag_dir.path().join("summary.json").exists());
    assert!(!fresh.path().join("summary.json").exists());
}

#[test]
fn same_seed_gives_identical_trees() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = run(&["run", fixture("demo.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--seed", "7"]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for name in names {
        assert_eq!(fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap(), "{name:?}");
    }
    let summary = fs::read_to_string(a.path().join("summary.json")).unwrap();
    assert!(summary.contains("\"seed\": 7"));
}

#[test]
fn axioms_subcommand() {
    let out = run(&["axioms", "--kind", "rational", "--t", "3/7", "--s", "-5/2", "--samples", "30", "--seed", "9"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS") && !text.contains("FAIL"));

    let out = run(&["axioms", "--t", "2", "--s", "3", "--samples", "5", "--convention", "uniform-ratio"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));

    assert_eq!(code(&run(&["axioms", "--t", "0", "--s", "3"])), 3);
}
