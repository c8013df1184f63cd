use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohom1")).args(args).env_remove("COHOM1_ORACLE_BOUND").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_non_manifold() {
    let o = run(&["check", "(SO3, O2, SO3, SO3)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("status: accepted"));
    assert!(out.contains("manifold: no"));
    assert!(out.contains("space: Σ(RP^2)"));
}

#[test]
fn check_torus_sphere() {
    let o = run(&["check", "(T2, e, circle(1,0), circle(0,1))", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["accepted"], true);
    assert_eq!(v["manifold"], true);
    assert_eq!(v["pi1"], "1");
}

#[test]
fn check_rejections_and_parse_errors() {
    let o = run(&["check", "(SO3, O2, SO3, Q17)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 16"));
    let o = run(&["check", "(SO3, Z3, SO3, O2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: rejected"));
}

#[test]
fn check_reads_documents() {
    let dir = std::env::temp_dir().join(format!("cohom1-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rp2.diagram");
    std::fs::write(&path, "schema_version = 1\ngroup = SO3\nh = O2\nk_minus = SO3\nk_plus = SO3\n").unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Σ(RP^2)"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_counts() {
    let o = run(&["classify", "3", "--non-manifold"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = run(&["classify", "4", "--non-manifold", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
    let o = run(&["classify", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of scope"));
}

#[test]
fn structured_output_is_stable() {
    let a = run(&["classify", "3", "--format", "structured"]);
    let b = run(&["classify", "3", "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_bound_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_cohom1"))
        .args(["classify", "3"])
        .env("COHOM1_ORACLE_BOUND", "none")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_cohom1"))
        .args(["classify", "3", "--non-manifold"])
        .env("COHOM1_ORACLE_BOUND", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Σ(RP^2)"));
}

#[test]
fn corollary_b() {
    let o = run(&["corollary-b", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = run(&["corollary-b", "10"]);
    assert!(stdout(&o).lines().all(|l| l.contains("T^7 x ")));
    assert_eq!(run(&["corollary-b", "3"]).status.code(), Some(2));
}

#[test]
fn pi1_and_realize() {
    let o = run(&["pi1", "(T2, e, circle(1,0), circle(1,5))"]);
    assert_eq!(stdout(&o), "Z_5\n");
    let o = run(&["realize", "(SO4, O3, SO4, SO4)"]);
    assert_eq!(stdout(&o), "Σ(RP^3)\n");
    assert_eq!(run(&["pi1", "(SO3, Z3, SO3, O2)"]).status.code(), Some(1));
    assert_eq!(run(&["realize"]).status.code(), Some(2));
}
