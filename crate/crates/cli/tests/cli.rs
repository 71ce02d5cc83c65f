use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_qverma");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--format", "json"]].concat());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["verify", "--suite", "uq", "--n", "2", "--mu", "1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["verify", "--n", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["orbit", "--n", "3", "--mu", "2", "--q", "1/2", "--regime", "gt1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["orbit", "--n", "3", "--mu", "2", "--hbar", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--n", "2", "--q", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["export", "--n", "2", "--mu", "1", "--format", "text"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn export_is_byte_stable() {
    let a = run(&["export", "--n", "2", "--mu", "2", "--object", "intertwiner"]);
    let b = run(&["export", "--n", "2", "--mu", "2", "--object", "intertwiner"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["kind"], "intertwiner");
    assert_eq!(v["manifests"][0]["dim"], 3);
    let entries = v["operators"][0]["entries"].as_array().unwrap();
    for e in entries {
        let text = e[2].as_str().unwrap();
        assert!(text.contains(" / "), "scalar text {text}");
    }
}

#[test]
fn json_reports_are_stable_apart_from_timing() {
    let args = ["orbit", "--n", "2", "--mu", "1", "--q", "3"];
    assert_eq!(without_elapsed(json(&args)), without_elapsed(json(&args)));
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("qverma-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# orbit run\nn = 3\nmu = 2\nq = 2\nformat = json\n").unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["orbit", "--config", p]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["n"], "3");
    assert_eq!(v["data"]["binding"]["z_squared"], "16 / 1");

    let out = run(&["orbit", "--config", p, "--mu", "1"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["mu"], "1");

    std::fs::write(&path, "n = 3\ncolour = blue\n").unwrap();
    assert_eq!(run(&["orbit", "--config", p]).status.code(), Some(2));
    assert_eq!(
        run(&["orbit", "--config", "/nonexistent/qverma.cfg"])
            .status
            .code(),
        Some(2)
    );

    let target = dir.join("out.json");
    let out = run(&[
        "export",
        "--n",
        "2",
        "--mu",
        "1",
        "--object",
        "module",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["kind"], "module");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn pole_is_reported_not_failed() {
    for regime in ["gt1", "lt1"] {
        let v = json(&["orbit", "--n", "2", "--hbar", "0", "--regime", regime]);
        assert_eq!(v["passed"], true);
        assert_eq!(v["data"]["singular"], true);
    }
}

#[test]
fn classical_constants_n3_mu4() {
    let v = json(&["orbit", "--n", "3", "--mu", "4", "--q", "1"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["data"]["c0"], "32/3");
    assert_eq!(v["data"]["c1"], "8/3");
}

#[test]
fn graded_dimensions_on_finite_module() {
    let v = json(&["orbit", "--n", "3", "--mu", "2", "--q", "2"]);
    assert_eq!(v["passed"], true);
    let dims: Vec<u64> = v["data"]["graded_dimensions"]["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 9, 36]);
}

#[test]
fn text_reports() {
    let out = run(&["decompose", "--n", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success());
    assert!(text.contains("total 64"));
    assert!(text.ends_with("ALL CHECKS PASSED\n"));
    let out = run(&["verify", "--suite", "adjoint", "--n", "2"]);
    assert!(out.status.success());
}
