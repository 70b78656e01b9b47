use std::path::Path;
use std::process::{Command, Output};

fn quasiep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasiep"))
        .args(args)
        .output()
        .expect("binary runs")
}

const E1: &str = r#"{"n":1,"A":[[2.0]],"b":[0.0],"A1":[[1.0]],"b1":[0.0],"c":[1.0],"d":1.0,"box_low":1.0,"box_high":3.0}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "e1.json", E1);
    let trace = dir.path().join("trace.csv");
    let out = quasiep(&[
        "solve", "--instance", &inst, "--variant", "ng2", "--scale", "1",
        "--trace", trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["success"], true);
    assert_eq!(summary["status"], "ResidualBelowTol");
    let csv = std::fs::read_to_string(trace).unwrap();
    assert!(csv.starts_with("k,alpha,step_norm,g_raw_norm,residual\n"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n":2,"A":[[1,0],[0,1]],"b":[0,0],"A1":[[1,0],[0,1]],"b1":[0,0],"c":[-1,-1],"d":0,"box_low":1,"box_high":3}"#,
    );
    let out = quasiep(&["solve", "--instance", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`c`"));
    let out = quasiep(&["check", "--instance", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = quasiep(&["solve", "--instance", &bad, "--scale", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsolved_run_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    // E1 from x0 = 2 with one tiny step never certifies a solution
    let inst = write(dir.path(), "e1.json", E1);
    let out = quasiep(&[
        "solve", "--instance", &inst, "--variant", "ng1", "--scale", "1e-6", "--max-iter", "1",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn check_reports_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let ident = write(
        dir.path(),
        "id.json",
        r#"{"n":2,"A":[[1,0],[0,1]],"b":[0,0],"A1":[[-1,0],[0,-1]],"b1":[0,0],"c":[0,0],"d":1,"box_low":1,"box_high":3}"#,
    );
    let out = quasiep(&["check", "--instance", &ident]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], false);
    assert_eq!(report["min_eigenvalue"], -1.0);
}

#[test]
fn gen_then_bench() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("gen");
    let out = quasiep(&["gen", "--n", "3", "--count", "2", "--seed", "5", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(files.len(), 2);
    let first = out_dir.join("instance_n3_0000.json");
    assert_eq!(quasiep(&["solve", "--instance", first.to_str().unwrap()]).status.code(), Some(0));

    let csv = dir.path().join("bench.csv");
    let out = quasiep(&[
        "bench", "--sizes", "2,4", "--count", "3", "--seed", "9", "--variant", "ng1",
        "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.contains("N. succ. prob."));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 3);
}
