use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn liesc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liesc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run liesc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn heisenberg_is_frattinian_and_splits() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(liesc(&["gen", "heisenberg", "--m", "2", "--field", "F3", "-o", "h2.json"], d).status.success());
    assert_eq!(liesc(&["check", "frattinian", "h2.json"], d).status.code(), Some(0));

    let o = liesc(&["decompose", "h2.json", "--report", "r.json"], d);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let env: Value = serde_json::from_str(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(env["command"], "decompose");
    assert!(env["input_digest"].as_str().unwrap().starts_with("sha256:"));
    let result = &env["result"];
    assert_eq!(result["case"], "one");
    let factors = result["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
    assert!(factors.iter().all(|f| f.as_array().unwrap().len() == 3));
    assert_eq!(result["verification"]["passed"], true);

    let o = liesc(&["verify", "certificate", "h2.json", "r.json"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certificate verified"));
}

#[test]
fn filiform_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(liesc(&["gen", "filiform", "--dim", "5", "--field", "F2", "-o", "f5.json"], d).status.success());
    let o = liesc(&["check", "frattinian", "f5.json"], d);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("not Frattinian"));
    assert!(text.contains("witness M = span{"));

    let o = liesc(&["--json", "check", "frattinian", "f5.json"], d);
    let env: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(env["result"]["frattinian"], false);
    assert_eq!(env["result"]["witness"].as_array().unwrap().len(), 4);

    let o = liesc(&["decompose", "f5.json"], d);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "NotFrattinian");
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.json"), "{").unwrap();
    let o = liesc(&["info", "bad.json"], d);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "ParseError");

    let jacobi = r#"{"format":"liesc-v1","field":{"kind":"prime","p":3},"dim":3,"brackets":[
        {"i":1,"j":2,"terms":[{"k":3,"c":"1"}]},{"i":1,"j":3,"terms":[{"k":1,"c":"1"}]}]}"#;
    std::fs::write(d.join("jacobi.json"), jacobi).unwrap();
    let o = liesc(&["check", "frattinian", "jacobi.json"], d);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "JacobiViolation");
    assert!(err["message"].as_str().unwrap().contains("(1, 2, 3)"));

    assert_eq!(liesc(&["info", "missing.json"], d).status.code(), Some(2));
    assert_eq!(liesc(&["frobnicate"], d).status.code(), Some(2));
    assert_eq!(
        liesc(&["gen", "abelian", "--n", "2", "--field", "F4", "-o", "a.json"], d).status.code(),
        Some(2)
    );
}

#[test]
fn info_and_maximal() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(liesc(&["gen", "filiform", "--dim", "4", "--field", "F3", "-o", "f4.json"], d).status.success());
    let text = stdout(&liesc(&["info", "f4.json"], d));
    assert!(text.contains("dimension: 4"));
    assert!(text.contains("nilpotency class: 3"));
    assert!(text.contains("lower central series dims: [4, 2, 1, 0]"));
    assert!(text.contains("center: span{e4}"));

    assert!(liesc(&["gen", "heisenberg", "--m", "1", "--field", "F2", "-o", "h1.json"], d).status.success());
    let text = stdout(&liesc(&["maximal", "h1.json", "--list"], d));
    assert!(text.starts_with("maximal subalgebras: 3"));
    assert_eq!(text.lines().count(), 4);

    assert!(liesc(&["gen", "abelian", "--n", "2", "--field", "Q", "-o", "q.json"], d).status.success());
    let o = liesc(&["maximal", "q.json"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn central_product_and_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(liesc(&["gen", "heisenberg", "--m", "1", "--field", "F2", "-o", "h1.json"], d).status.success());
    let o = liesc(&["gen", "central-product", "--left", "h1.json", "--right", "h1.json", "-o", "hh.json"], d);
    assert!(o.status.success());
    let text = stdout(&liesc(&["decompose", "hh.json"], d));
    assert!(text.starts_with("case one with 2 factor(s)"));

    let o = liesc(&["gen", "catalog", "--dim", "4", "--field", "F2", "-o", "cat"], d);
    assert!(o.status.success());
    let files = std::fs::read_dir(d.join("cat")).unwrap().count();
    assert!(files >= 8);
    assert!(d.join("cat/H_1_.json").exists());
}

#[test]
fn suite_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = || {
        let o = liesc(&["--json", "verify", "suite", "--field", "F3", "--max-dim", "4"], d);
        assert_eq!(o.status.code(), Some(0));
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert!(a["result"]["cases"]["one"].as_u64().unwrap() > 0);
    assert_eq!(a["result"]["cases"]["failed"], 0);
    assert_eq!(a["result"]["checks"]["centralizer-dichotomy"]["pass"], a["result"]["pairs"]);

    let o = liesc(&["verify", "suite", "--field", "F2", "--max-dim", "6"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("decomposition cases: one"));
}
