mod common;

use std::path::Path;
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_sunada");

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn reports(dir: &Path) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.to_string_lossy().ends_with(".timing.json"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    v.sort();
    v
}

const BATCH: &str = r#"[
  {"kind": "heisenberg_suite", "p": 2, "n": 2},
  {"kind": "certify", "group": {"type": "affine", "p": 3, "n": 2}, "subgroups": [{"subspace": [[1, 0]]}, {"subspace": [[0, 1]]}]},
  {"kind": "schreier", "group": {"type": "heisenberg", "p": 2, "n": 2}, "subgroups": ["horizontal", {"twist": [[1, 0], [1, 1]]}]},
  {"kind": "distance", "X": "C", "samples": 200},
  {"forms": {"field": {"minpoly": [-2, 0, 1]}, "X": "R", "n": 4, "action": "search_admissible", "height": 3}}
]"#;

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "batch.json", BATCH);
    let s6 = write(dir.path(), "s6.json", common::S6_COVERS_JOB);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let (code, _, err) = run(&["--job", &job, "--job", &s6, "--out", out.to_str().unwrap(), "--seed", "7"]);
        assert_eq!(code, 0, "{err}");
    }
    let (ra, rb) = (reports(&a), reports(&b));
    assert_eq!(ra.len(), 6);
    assert_eq!(ra, rb);
    // reports are named after the job content hash
    for (name, text) in &ra {
        let v: Value = serde_json::from_str(text).unwrap();
        assert_eq!(format!("{}.json", v["job_hash"].as_str().unwrap()), *name);
        assert_eq!(v["status"], "confirmed");
        assert!(a.join(name.replace(".json", ".timing.json")).exists());
    }
}

#[test]
fn s6_covers_job_is_multiset_equal() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "s6.json", common::S6_COVERS_JOB);
    let (code, stdout, _) = run(&["--job", &job]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    let res = &r["results"];
    assert_eq!(res["degrees"], serde_json::json!([180, 180]));
    assert_eq!(res["equal"]["multiset_all"], true);
    assert_eq!(res["enumerated"]["multiset_all"]["equal"], true);
    assert_eq!(res["cycle_types_agree"], true);
    // big integers are decimal strings
    assert!(res["floor"].is_string());
}

#[test]
fn seed_changes_only_seeded_reports() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "d.json", r#"{"kind": "distance", "X": "H", "samples": 20}"#);
    let (_, s1, _) = run(&["--job", &job, "--seed", "1"]);
    let (_, s2, _) = run(&["--job", &job, "--seed", "2"]);
    let (_, s1b, _) = run(&["--job", &job, "--seed", "1"]);
    assert_eq!(s1, s1b);
    assert_ne!(s1, s2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "ok.json", r#"{"group": {"type": "cyclic", "n": 4}}"#);
    let refuted = write(dir.path(), "r.json", r#"{"kind": "group", "group": {"type": "cyclic", "n": 4}, "expect": {"order": 5}}"#);
    let schema = write(dir.path(), "s.json", r#"{"kind": "certify", "group": {"type": "cyclic", "n": 4}}"#);
    let not_generating = write(
        dir.path(),
        "ng.json",
        r#"{"kind": "covers", "L": 8, "group": {"type": "symmetric", "n": 3}, "subgroups": ["trivial", "whole"],
            "phi": {"a": {"cycles": [[1, 2]]}, "b": {"cycles": [[1, 2]]}}}"#,
    );
    assert_eq!(run(&["--job", &ok]).0, 0);
    assert_eq!(run(&["--job", &refuted]).0, 2);
    let (code, _, err) = run(&["--job", &schema]);
    assert_eq!(code, 1);
    assert!(err.contains("/subgroups"), "{err}");
    let (code, stdout, _) = run(&["--job", &not_generating]);
    assert_eq!(code, 1);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r["status"], "error");
    // errors take precedence over refutations
    assert_eq!(run(&["--job", &refuted, "--job", &schema]).0, 1);
}

#[test]
fn caps_file_limits_work() {
    let dir = tempfile::tempdir().unwrap();
    let caps = write(dir.path(), "caps.json", r#"{"closure": 100}"#);
    let job = write(dir.path(), "h.json", r#"{"kind": "heisenberg_suite", "p": 3, "n": 2}"#);
    let (code, stdout, _) = run(&["--job", &job, "--caps", &caps, "--threads", "1"]);
    assert_eq!(code, 1);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert!(r["error"].as_str().unwrap().contains("cap"), "{}", r["error"]);
}

#[test]
fn report_order_follows_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = write(
        dir.path(),
        "j.json",
        r#"[{"group": {"type": "cyclic", "n": 3}}, {"group": {"type": "symmetric", "n": 4}}, {"group": {"type": "cyclic", "n": 5}}]"#,
    );
    let (_, stdout, _) = run(&["--job", &jobs, "--threads", "2"]);
    let orders: Vec<u64> = serde_json::Deserializer::from_str(&stdout)
        .into_iter::<Value>()
        .map(|v| v.unwrap()["results"]["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![3, 24, 5]);
}
