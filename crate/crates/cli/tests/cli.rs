use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rankin(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankin"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .env_remove("RANKIN_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn decompose_golden_levels() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["decompose", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("c = 3/5"), "{text}");
    assert!(text.contains("lambda = 2/5"), "{text}");

    let o = rankin(dir.path(), &["decompose", "67", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "decompose");
    let c = &v["result"]["eisenstein_coefficient"];
    assert_eq!((c["num"].as_str(), c["den"].as_str()), (Some("1"), Some("11")));
}

#[test]
fn user_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["decompose", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("level must be a prime"));
    assert!(stdout(&o).is_empty());

    // 23 has no rational newform
    let o = rankin(dir.path(), &["certify", "23", "--modular-degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no elliptic-curve form"));

    let o = rankin(dir.path(), &["decompose", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["decompose", "43", "--out", "json"][..],
        &["eisenstein", "11", "--out", "json"],
        &["space", "37", "--sign", "minus", "--out", "json"],
        &["certify", "11", "--modular-degree", "1", "--out", "json"],
    ] {
        let text = stdout(&rankin(dir.path(), args));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let cold = rankin(dir.path(), &["decompose", "67", "--out", "json"]);
    assert!(dir.path().join("level-67.json").exists());
    let warm = rankin(dir.path(), &["decompose", "67", "--out", "json"]);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(stdout(&cold), stdout(&warm));

    let other = tempfile::tempdir().unwrap();
    let fresh = rankin(other.path(), &["decompose", "67", "--out", "json"]);
    assert_eq!(stdout(&fresh), stdout(&warm));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rankin"))
        .args(["decompose", "19"])
        .env("RANKIN_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("level-19.json").exists());
}

#[test]
fn corrupt_cache_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("level-11.json"), "{\"version\": 99}").unwrap();
    let o = rankin(dir.path(), &["decompose", "11"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cache error"));
}

#[test]
fn scans_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["scan", "11", "--modular-degree", "1", "--p-max", "200"];
    let a = rankin(dir.path(), &args);
    let b = rankin(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["command"], "scan");
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn timing_only_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["--timing", "decompose", "11", "--out", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("timing_ms").is_some());
}

#[test]
fn missing_modular_degree_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["certify", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
}

#[test]
fn certify_json_verdicts_at_11() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["certify", "11", "--modular-degree", "1", "--p-max", "30", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v["result"]["certificate"]["verdicts"].as_array().unwrap();
    let by_p = |p: u64| verdicts.iter().find(|x| x["p"] == p).unwrap();
    assert_eq!(by_p(7)["conclusion"], "mu=lambda=0");
    assert_eq!(by_p(5)["conclusion"], "inconclusive");
    assert_eq!(by_p(5)["reasons"][0], "anomalous");
    assert_eq!(by_p(11)["reduction"], "bad");
}

#[test]
fn space_and_eisenstein_text() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["space", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a_2 = -2"));
    let o = rankin(dir.path(), &["eisenstein", "23", "--prec", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn selftest_small_range() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankin(dir.path(), &["selftest", "--n-max", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}
