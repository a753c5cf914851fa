use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entropy-bound"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("entropy-bound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn doublewell_config_runs_clean() {
    let out = run(&["run", config("doublewell.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("x0=5.45000"));
    assert!(text.contains("F=232.24"));
}

#[test]
fn json_output_to_file() {
    let out_path =
        std::env::temp_dir().join(format!("entropy-bound-sweep-{}.json", std::process::id()));
    let out = run(&[
        "run",
        config("two_level_temperature_sweep.toml").to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(rows.len(), 61);
    assert!(rows.iter().all(|r| r["satisfied"] == true));
    std::fs::remove_file(out_path).ok();
}

#[test]
fn overrides_change_the_run() {
    let path = config("doublewell.toml");
    let out = run(&["run", path.to_str().unwrap(), "--set", "amplitude=0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("a=0.5"));
    let out = run(&[
        "run",
        path.to_str().unwrap(),
        "--set",
        "sweep_count=0",
        "--set",
        "sweep=amplitude",
        "--set",
        "sweep_start=0.1",
        "--set",
        "sweep_stop=0.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn violation_exits_two() {
    let path = scratch(
        "violation.json",
        r#"{"scenario": "two_level", "parameters": {"g": 400000, "rho0": 2.0, "rho_gap": 0.0, "y": 0.0}}"#,
    );
    let out = run(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains(",false,ok,"));
}

#[test]
fn config_and_model_errors_exit_one() {
    let unknown = scratch(
        "unknown.toml",
        "[scenario]\nscenario = \"doublewell\"\namplitude = 0.5\ncolour = 3\n",
    );
    let out = run(&["run", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("colour"));

    let out = run(&["run", "/nonexistent/config.toml"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "run",
        config("doublewell.toml").to_str().unwrap(),
        "--set",
        "amplitude=1.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no zero"));

    let out = run(&["run", config("three_well.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("no_zero_error").count(), 14);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["run"]).status.code(), Some(1));
    assert_eq!(
        run(&[
            "run",
            config("doublewell.toml").to_str().unwrap(),
            "--format",
            "xml"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
