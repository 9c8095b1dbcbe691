//! End-to-end tests driving the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn arlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arlab"))
        .args(args)
        .env_remove("ARLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_rainbow(path: &Path, n: usize) {
    let m = n * (n - 1) / 2;
    let colors = (0..m).map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    std::fs::write(path, format!("{n}\n{colors}\n")).unwrap();
}

#[test]
fn formula_text_and_json() {
    let out = arlab(&["formula", "--family", "SPANNING_KP3_TP2", "--params", "k=2,t=3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 37"));

    let out = arlab(&["formula", "--family", "MATCHING", "--params", "n=14,t=7", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 57);
    assert_eq!(v["family"], "MATCHING");

    let out = arlab(&["formula", "--family", "PATH", "--params", "n=10,t=2"]);
    assert!(out.status.success(), "domain misses still report cleanly");
    assert!(stdout(&out).contains("out of domain"));

    let out = arlab(&["formula", "--family", "NOPE", "--params", ""]);
    assert!(!out.status.success());
}

#[test]
fn construct_then_detect_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let path_str = path.to_str().unwrap();

    let out = arlab(&["construct", "--k", "1", "--t", "2", "--out", path_str]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("7 classes"));

    // The construction is extremal: the spanning forest is absent, and the
    // search proves it from the root.
    let out = arlab(&["detect", "--input", path_str, "--k", "1", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("no rainbow copy exists"), "{text}");
    assert!(text.contains("1 nodes"), "{text}");

    // A strictly smaller forest fits easily.
    let out = arlab(&["detect", "--input", path_str, "--k", "1", "--t", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["witness"].is_object());
    assert_eq!(v["complete"], true);

    // Budget exhaustion is a distinct exit code.
    let out = arlab(&["detect", "--input", path_str, "--k", "1", "--t", "2", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_streams_coloring_when_no_out() {
    let out = arlab(&["construct", "--k", "1", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("7\n"), "text format starts with n: {text}");
    assert_eq!(text.split_whitespace().count(), 1 + 21);

    let out = arlab(&["construct", "--k", "1", "--t", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 7);
    assert_eq!(v["colors"].as_array().unwrap().len(), 21);
}

#[test]
fn find_extracts_from_rainbow_host() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rainbow.txt");
    write_rainbow(&path, 10);
    let path_str = path.to_str().unwrap();

    let out = arlab(&["find", "--input", path_str, "--k", "2", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("spanning rainbow forest"), "{text}");
    assert!(text.contains("level 0: base search"), "{text}");
    assert!(text.contains("level 1:"), "{text}");

    let out = arlab(&["find", "--input", path_str, "--k", "2", "--t", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["witness"]["p3s"].as_array().unwrap().len(), 2);
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);

    // The extremal construction sits one class below the threshold.
    let cpath = dir.path().join("c.json");
    let out = arlab(&["construct", "--k", "2", "--t", "2", "--out", cpath.to_str().unwrap()]);
    assert!(out.status.success());
    let out = arlab(&["find", "--input", cpath.to_str().unwrap(), "--k", "2", "--t", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("below the required"));
}

#[test]
fn oracle_small_cases() {
    let out = arlab(&["oracle", "--n", "5", "--k", "1", "--t", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("AR(5, 1P3 + 1P2) = 2 (proven"));

    let out = arlab(&["oracle", "--n", "4", "--triangle", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 3);
    assert_eq!(v["proven"], true);
    assert_eq!(v["extremal"]["colors"].as_array().unwrap().len(), 6);

    // Above the cap, a budget is mandatory; with one, the status is honest.
    let out = arlab(&["oracle", "--n", "8", "--k", "1", "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = arlab(&["oracle", "--n", "8", "--k", "1", "--t", "1", "--budget", "500"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains(">="));

    // --k without --t is a usage error caught by the parser.
    let out = arlab(&["oracle", "--n", "5", "--k", "1"]);
    assert!(!out.status.success());
}

#[test]
fn oracle_seed_and_extremal_out() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("seed.json");
    let best = dir.path().join("best.json");
    let out = arlab(&["construct", "--k", "1", "--t", "2", "--out", seed.to_str().unwrap()]);
    assert!(out.status.success());

    let out = arlab(&[
        "oracle", "--n", "7", "--k", "1", "--t", "2",
        "--budget", "100",
        "--seed-file", seed.to_str().unwrap(),
        "--extremal-out", best.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(2), "tiny budget cannot finish");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 7, "the seed survives as the incumbent");
    // The written coloring is the seed itself, normalized either way.
    let seed_file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&seed).unwrap()).unwrap();
    let best_file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&best).unwrap()).unwrap();
    assert_eq!(seed_file, best_file);
}

#[test]
fn crosscheck_base_passes_with_informational_row() {
    let out = arlab(&["crosscheck", "--suite", "base"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("suite PASSED"), "{text}");
    assert!(text.contains("MISMATCH (informational)"), "{text}");

    let out = arlab(&["crosscheck", "--suite", "base", "--csv"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.starts_with("id,left,right,"));
    assert_eq!(csv.matches("Mismatch,Informational").count(), 1);

    let out = arlab(&["crosscheck", "--suite", "unheard-of"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn threads_env_var_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_arlab"))
        .args(["oracle", "--n", "5", "--k", "1", "--t", "1"])
        .env("ARLAB_THREADS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ARLAB_THREADS"));

    let out = Command::new(env!("CARGO_BIN_EXE_arlab"))
        .args(["oracle", "--n", "5", "--k", "1", "--t", "1", "--threads", "1"])
        .env("ARLAB_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn sequential_flag_matches_parallel_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rainbow.txt");
    write_rainbow(&path, 12);
    let path_str = path.to_str().unwrap();

    let par = arlab(&["find", "--input", path_str, "--k", "2", "--t", "3", "--json"]);
    let seq = arlab(&["find", "--input", path_str, "--k", "2", "--t", "3", "--json", "--sequential"]);
    assert!(par.status.success() && seq.status.success());
    assert_eq!(stdout(&par), stdout(&seq));
}
