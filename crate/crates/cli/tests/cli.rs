use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn epicyclic(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epicyclic"))
        .args(args)
        .current_dir(dir)
        .env_remove("EPICYCLIC_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn exported_circle_inspects_as_simplicial() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["export", "circle", "--truncation", "3", "--emit", "circle.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = epicyclic(dir.path(), &["inspect", "circle.json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("kind: simplicial"), "{text}");
    assert!(text.contains("degree 3: 4 simplices"), "{text}");
    assert!(text.contains("validation: ok"), "{text}");
}

#[test]
fn witt_vector_inspects_with_ghost() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["trace", "--matrix", "[[0,1],[1,0]]", "--trunc", "4", "--emit", "swap.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&epicyclic(dir.path(), &["inspect", "swap.json"]));
    assert!(text.contains("kind: witt"), "{text}");
    assert!(text.contains("ring: z:0"), "{text}");
    assert!(text.contains("coords: [0, 1, 0]"), "{text}");
    assert!(text.contains("ghost: [0, 2, 2]"), "{text}");
}

#[test]
fn truncated_document_is_a_parse_error_with_offset() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"kind": "witt", "ring": "z:0", "S": [1, 2"#;
    fs::write(dir.path().join("bad.json"), text).unwrap();
    let o = epicyclic(dir.path(), &["inspect", "bad.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains(&format!("byte {}", text.len())), "{}", stderr(&o));
    fs::write(dir.path().join("kind.json"), r#"{"kind": "nope"}"#).unwrap();
    assert_eq!(epicyclic(dir.path(), &["inspect", "kind.json"]).status.code(), Some(3));
}

#[test]
fn witt_arithmetic() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["witt", "add", "--trunc", "2", "--coords", "1,0", "--other", "1,0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coords"], serde_json::json!(["2", "-1"]));
    let o = epicyclic(dir.path(), &["witt", "frob", "--r", "2", "--trunc", "4", "--coords", "0,1,0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coords"], serde_json::json!(["2", "-1"]));
    let o = epicyclic(dir.path(), &["witt", "mul", "--ring", "z:4", "--trunc", "2", "--coords", "1,0"]);
    assert_eq!(o.status.code(), Some(2), "missing --other is a usage error");
    let o = epicyclic(dir.path(), &["witt", "ghost", "--ring", "z:x", "--trunc", "2", "--coords", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homology_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["homology", "--builtin", "sphere2", "--truncation", "4", "--through", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["0"]["betti"], 1);
    assert_eq!(v["1"]["betti"], 0);
    assert_eq!(v["2"]["betti"], 1);
    let o = epicyclic(dir.path(), &["homology", "--builtin", "circle", "--truncation", "3", "--through", "3"]);
    assert_eq!(o.status.code(), Some(2), "the top degree is refused");
}

#[test]
fn broken_complex_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    epicyclic(dir.path(), &["export", "circle", "--truncation", "3", "--emit", "circle.json"]);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("circle.json")).unwrap()).unwrap();
    for face in doc["faces"].as_array_mut().unwrap() {
        if face[0] == 2 && face[1] == 0 {
            for x in face[2].as_array_mut().unwrap() {
                *x = Value::from(1);
            }
        }
    }
    fs::write(dir.path().join("broken.json"), doc.to_string()).unwrap();
    let o = epicyclic(dir.path(), &["subdivide", "--input", "broken.json", "--r", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn subdivision_emits_valid_cyclic_set() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["subdivide", "--builtin", "circle", "--truncation", "5", "--r", "3", "--emit", "sd3.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&epicyclic(dir.path(), &["inspect", "sd3.json"]));
    assert!(text.contains("cyclic: yes, period 3"), "{text}");
}

#[test]
fn unknown_check_is_a_usage_error_and_runs_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["suite", "--check", "coherence,foo"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("foo"));
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn empty_suite_passes_with_empty_report_in_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    fs::write(dir.path().join("empty.json"), r#"{"kind": "suite-config", "checks": []}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_epicyclic"))
        .args(["suite", "--config", "empty.json"])
        .current_dir(dir.path())
        .env("EPICYCLIC_OUT_DIR", &out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["kind"], "report");
    assert_eq!(report["passed"], true);
    assert_eq!(report["checks"], serde_json::json!([]));
    assert!(out.join("report.txt").exists());
}

#[test]
fn malformed_suite_config_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), r#"{"kind": "suite-config", "checkz": []}"#).unwrap();
    let o = epicyclic(dir.path(), &["suite", "--config", "cfg.json"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn suite_reports_replay_with_the_same_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let o = epicyclic(
            dir.path(),
            &["suite", "--check", "witt-diagram,trace-laws,coherence", "--seed", "17", "--jobs", jobs, "--report", name],
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let mut v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap()).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsed_ms"] = Value::from(0);
        }
        v
    };
    let (a, b) = (run("a", "1"), run("b", "4"));
    assert_eq!(a["seed"], 17);
    assert_eq!(a, b);
}

#[test]
fn bar_and_index_checks_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = epicyclic(dir.path(), &["barcy", "--monoid", "s3", "--degree", "4", "--truncation", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    epicyclic(dir.path(), &["export", "z3", "--emit", "z3.json"]);
    let o = epicyclic(dir.path(), &["barcy", "--monoid", "z3.json", "--check", "frobenius"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = epicyclic(dir.path(), &["indexcat", "--bound", "24", "--check", "relations", "--check", "factorization"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = epicyclic(dir.path(), &["coherence", "--primes", "2,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = epicyclic(dir.path(), &["coherence", "--primes", "2,4"]);
    assert_eq!(o.status.code(), Some(2));
}
