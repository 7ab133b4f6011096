use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn xsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn gallery_file(dir: &Path, name: &str) -> PathBuf {
    let p = dir.join(format!("{name}.json"));
    let o = xsep(&["gallery", "--name", name, "--output", p.to_str().unwrap()]);
    assert!(o.status.success());
    p
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let rho1 = gallery_file(dir.path(), "rho1");
    assert_eq!(xsep(&["validate", rho1.to_str().unwrap()]).status.code(), Some(0));

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"a":[1,0,0,0],"b":[1,0,0,0],"z":[[5,0],[0,0],[0,0],[0,0]]}"#,
    );
    let o = xsep(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("block 1"));

    let garbage = write(dir.path(), "garbage.json", "{ this is not json");
    assert_eq!(xsep(&["validate", garbage.to_str().unwrap()]).status.code(), Some(3));
    let extra = write(
        dir.path(),
        "extra.json",
        r#"{"a":[1,1,1,1],"b":[1,1,1,1],"z":[[0,0],[0,0],[0,0],[0,0]],"w":3}"#,
    );
    assert_eq!(xsep(&["validate", extra.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(xsep(&["validate", "/nonexistent/state.json"]).status.code(), Some(3));
}

#[test]
fn check_reports_both_routes() {
    let dir = TempDir::new().unwrap();
    let rho1 = gallery_file(dir.path(), "rho1");
    let o = xsep(&["check", rho1.to_str().unwrap(), "--bipartition", "A-BC"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "A-BC: separable: true, ppt: true\n");

    let rho2 = gallery_file(dir.path(), "rho2");
    let o = xsep(&["check", rho2.to_str().unwrap(), "--bipartition", "C-AB"]);
    assert_eq!(stdout(&o), "C-AB: separable: false, ppt: false\n");

    let mixed = write(
        dir.path(),
        "mixed.json",
        r#"{"a":[1,1,1,1],"b":[1,1,1,1],"z":[[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let o = xsep(&["check", mixed.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("separable: true, ppt: true").count(), 3);
}

#[test]
fn classify_paper_states() {
    let dir = TempDir::new().unwrap();
    let rho3 = gallery_file(dir.path(), "rho3");
    let o = xsep(&["classify", rho3.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["label"], "C-2-3-1");
    let out = &v["certificates"]["hull(B,C)"];
    assert_eq!(out["tag"], "Out");
    assert_eq!(out["condition"], "(i)");
    assert_eq!(out["lhs"], 1.0);
    assert_eq!(out["rhs"], 3.0);
    assert_eq!(v["certificates"]["hull(C,A)"]["tag"], "In");
    assert_eq!(v["certificates"]["hull(A,B)"]["tag"], "In");

    let rho2 = gallery_file(dir.path(), "rho2");
    let v: Value = serde_json::from_str(&stdout(&xsep(&["classify", rho2.to_str().unwrap()]))).unwrap();
    assert_eq!(v["label"], "C-2-4");
    for q in ["hull(B,C)", "hull(C,A)", "hull(A,B)"] {
        assert_eq!(v["certificates"][q]["tag"], "In");
        assert_eq!(v["certificates"][q]["components"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn classify_diagonal_state_is_out_of_scope() {
    let dir = TempDir::new().unwrap();
    let diag = write(
        dir.path(),
        "diag.json",
        r#"{"a":[0.3,0.1,0.7,0.2],"b":[0.4,0.9,0.05,0.6],"z":[[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let v: Value = serde_json::from_str(&stdout(&xsep(&["classify", diag.to_str().unwrap()]))).unwrap();
    assert_eq!(v["label"], "OutOfScope");
    for p in ["A-BC", "B-CA", "C-AB"] {
        assert_eq!(v["separable"][p], true);
    }
}

#[test]
fn classify_is_deterministic_modulo_timings() {
    let dir = TempDir::new().unwrap();
    let rho2 = gallery_file(dir.path(), "rho2");
    let path = rho2.to_str().unwrap();
    let run = || -> Value {
        serde_json::from_str(&stdout(&xsep(&["classify", path, "--seed", "7", "--budget", "500"]))).unwrap()
    };
    let (first, second) = (run(), run());
    assert_eq!(first["seed"], 7);
    assert_eq!(without_timings(first), without_timings(second));
}

#[test]
fn decompose_and_witness_subcommands() {
    let dir = TempDir::new().unwrap();
    let rho1 = gallery_file(dir.path(), "rho1");
    let o = xsep(&[
        "decompose",
        rho1.to_str().unwrap(),
        "--bipartition",
        "B-CA",
        "--bipartition",
        "C-AB",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tag"], "In");

    let ghz = write(
        dir.path(),
        "ghz.json",
        r#"{"a":[0.5,0,0,0],"b":[0.5,0,0,0],"z":[[0.5,0],[0,0],[0,0],[0,0]]}"#,
    );
    let v: Value = serde_json::from_str(&stdout(&xsep(&["decompose", ghz.to_str().unwrap()]))).unwrap();
    assert_eq!(v["tag"], "Unknown");

    // the witness detecting rho3 outside hull(B,C)
    let w = write(
        dir.path(),
        "w.json",
        r#"{"s":[1,0,0,1],"t":[1,0,0,1],"u":[[0,0],[-1,0],[-1,0],[0,0]]}"#,
    );
    let rho3 = gallery_file(dir.path(), "rho3");
    let o = xsep(&["witness", w.to_str().unwrap(), rho3.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pairing"], -4.0);
    assert_eq!(v["block_positive"]["hull(B, C)"], true);
    assert!(v["detects"].as_array().unwrap().iter().any(|d| d == "not in hull(B, C)"));

    let negative = write(
        dir.path(),
        "neg.json",
        r#"{"s":[-1,0,0,1],"t":[1,0,0,1],"u":[[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    assert_eq!(
        xsep(&["witness", negative.to_str().unwrap(), rho3.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn gallery_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("all");
    assert!(xsep(&["gallery", "--output", out.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_dir(&out).unwrap().count(), 15);
    let expected = [("rho1", "C-2-6-1"), ("rho2", "C-2-4"), ("rho3", "C-2-3-1"), ("rho3B", "OutOfScope")];
    for (name, label) in expected {
        let p = out.join(format!("{name}.json"));
        let v: Value = serde_json::from_str(&stdout(&xsep(&["classify", p.to_str().unwrap()]))).unwrap();
        assert_eq!(v["label"], label, "{name}");
    }
    let o = xsep(&["gallery", "--name", "rho3B"]);
    assert_eq!(stdout(&o), "{\"a\":[0.0,1.0,0.0,1.0],\"b\":[0.0,1.0,0.0,1.0],\"z\":[[0.0,0.0],[1.0,0.0],[0.0,0.0],[1.0,0.0]]}\n");
    assert_eq!(xsep(&["gallery", "--name", "rho9"]).status.code(), Some(2));
    let all: Value = serde_json::from_str(&stdout(&xsep(&["gallery"]))).unwrap();
    assert_eq!(all.as_object().unwrap().len(), 15);
}
