use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hpzeros"));
    c.env_remove("HP_BITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn lists_every_preset() {
    let o = run(&["preset", "--list"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 72);
    assert!(text.lines().any(|l| l.starts_with("fig1_1\tn=130\t")));
}

#[test]
fn preset_files_are_byte_stable_and_carry_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = run(&["preset", "fig4_1", "--n", "6", "--bits", "300", "--out", d.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for ext in ["csv", "json", "svg"] {
        let x = fs::read(a.join(format!("fig4_1.{ext}"))).unwrap();
        let y = fs::read(b.join(format!("fig4_1.{ext}"))).unwrap();
        assert_eq!(x, y, "{ext}");
    }
    let csv = fs::read_to_string(a.join("fig4_1.csv")).unwrap();
    assert!(csv.contains("# n: 6\n") && csv.contains("# bits: 300\n"));
    let svg = fs::read_to_string(a.join("fig4_1.svg")).unwrap();
    assert!(svg.contains("<!-- n: 6 -->") && svg.contains("<!-- bits: 300 -->"));
    let json: Value = serde_json::from_str(&fs::read_to_string(a.join("fig4_1.json")).unwrap()).unwrap();
    assert_eq!(json["metadata"]["n"], "6");
    assert_eq!(json["metadata"]["bits"], "300");
    assert_eq!(json["sets"].as_array().unwrap().len(), 3);
}

#[test]
fn precision_from_the_environment() {
    let o = bin().args(["hp", "--family", "case2", "--a", "2/5", "--n", "4"]).env("HP_BITS", "320").output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["metadata"]["bits"], "320");
    let o = bin().args(["hp", "--n", "4"]).env("HP_BITS", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hp_report_on_stdout() {
    let o = run(&["hp", "--family", "case1", "--a", "1/5", "--n", "5"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["metadata"]["bits"], "512");
    let checks = v["checks"].as_array().unwrap();
    let refl = checks.iter().find(|c| c["name"] == "reflection_q1_q2").unwrap();
    assert_eq!(refl["passed"], true);
}

#[test]
fn roots_from_stdin() {
    let mut child = bin().args(["roots", "-", "--bits", "256"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"[[1, 0], [0, 0], [1, 0]]").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let v = stdout_json(&o);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
}

#[test]
fn analyze_exported_sets() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["preset", "fig4_1", "--n", "8", "--out", out, "--format", "csv"]);
    assert!(o.status.success());
    let csv = dir.path().join("fig4_1.csv");
    let o = run(&["analyze", csv.to_str().unwrap(), "--check", "reflection", "--labels", "q1", "q2"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["ok"], true);
    let o = run(&["analyze", csv.to_str().unwrap(), "--check", "conjugate", "--labels", "q0", "--tol", "1e-20"]);
    assert_eq!(stdout_json(&o)["ok"], true);

    let lonely = dir.path().join("lonely.csv");
    fs::write(&lonely, "label,re,im,residual,multiplicity\nzeros,1,1,0,0\n").unwrap();
    let o = run(&["analyze", lonely.to_str().unwrap(), "--check", "conjugate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["ok"], false);
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["preset", "fig99_1"]).status.code(), Some(2));
    assert_eq!(run(&["hp", "--family", "case7"]).status.code(), Some(2));
    assert_eq!(run(&["hp", "--a", "3/2", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_one_directory_per_preset() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["sweep", "--select", "fig2", "--n", "6", "--workers", "2", "--out", dir.path().to_str().unwrap(), "--format", "json"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 4, "{text}");
    for id in ["fig2_1", "fig2_2", "fig2_3", "fig2_4"] {
        assert!(dir.path().join(id).join(format!("{id}.json")).exists());
    }
}

#[test]
fn lens_sweep_reports_fractions() {
    let o = run(&["sweep", "--lens-case", "1", "--a-values", "1/5,4/5", "--n", "10"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0]["fraction"].is_number());
}

#[test]
fn negative_parameter_is_a_value() {
    // Case 2 at negative a fails the Angelesco check, so exit 1 with a report.
    let o = run(&["hp", "--family", "case2", "--a", "-1/10", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = stdout_json(&o);
    assert_eq!(doc["problem"]["a"], "-1/10");
    let o = run(&["hp", "--family", "case1", "--a", "-1/10", "--n", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["sweep", "--lens-case", "1", "--a-values", "-1/10,1/5", "--n", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 2);
}
