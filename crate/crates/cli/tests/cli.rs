// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use koethe_cli::{exit_code, Status};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn koethe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koethe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn run_config(name: &str, extra: &[&str]) -> Output {
    let path = configs().join(name);
    let mut args = vec!["--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    koethe(&args)
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn example_configs_exit_codes() {
    for (name, expected) in [
        ("compactness_finite.json", 0),
        ("compactness_infinite.json", 0),
        ("spaces.json", 0),
        ("tameness.json", 0),
        ("apply.json", 0),
        ("not_well_defined.json", 5),
    ] {
        let out = run_config(name, &[]);
        assert_eq!(code(&out), expected, "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn certify_compactness_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config("compactness_finite.json", &["--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = read_json(&dir.path().join("task-00-certify-compactness.json"));
    assert_eq!(r["status"], "ok");
    assert_eq!(r["report"]["theorem_id"], "P3");
    assert_eq!(r["report"]["outcome"]["certificate"]["m"], 1);
    let summary = read_json(&dir.path().join("summary.json"));
    assert_eq!(summary["exit_code"], 0);
    assert_eq!(summary["tasks"].as_array().unwrap().len(), 4);
    let csv = fs::read_to_string(dir.path().join("task-03-probe.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("N,k,m,log_ratio"));
    // three k values times the default five checkpoints
    assert_eq!(lines.count(), 15);
}

#[test]
fn full_combined_route_lists_both_parts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config("compactness_infinite.json", &["--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = read_json(&dir.path().join("task-02-certify.json"));
    assert_eq!(r["report"]["theorem_id"], "combined-infinite");
    assert_eq!(r["report"]["components"], serde_json::json!(["P6", "P10"]));
}

#[test]
fn not_well_defined_diagnostic() {
    let out = run_config("not_well_defined.json", &[]);
    assert!(code(&out) >= 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not well defined"), "{err}");
    assert!(err.contains("tasks[0]"), "{err}");
}

#[test]
fn config_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    };
    let empty = write("empty.json", r#"{"tasks": []}"#);
    let out = koethe(&["--config", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("tasks"));

    let text = fs::read_to_string(configs().join("compactness_finite.json")).unwrap();
    let bad = write("bad.json", &text.replace(r#""symbol": "geo""#, r#""symbol": "nope""#));
    let out = koethe(&["--config", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("operators.T.symbol"));

    let window = write("window.json", &text.replace(r#""tasks""#, r#""window": {"n": 0}, "tasks""#));
    let out = koethe(&["--config", window.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("window"));

    let out = koethe(&["--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&koethe(&[])), 4);
    assert_eq!(code(&koethe(&["--no-such-flag"])), 4);
    assert_eq!(code(&koethe(&["--help"])), 0);
    assert_eq!(code(&koethe(&["operator", "certify", "--operator", "{}", "--property", "speed"])), 4);
}

#[test]
fn outputs_are_deterministic() {
    for name in ["tameness.json", "compactness_finite.json", "apply.json"] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        for d in [&a, &b] {
            let out = run_config(name, &["--out", d.path().to_str().unwrap(), "--format", "both"]);
            assert_eq!(code(&out), 0, "{name}");
        }
        let mut files: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        files.sort();
        assert!(files.len() >= 2, "{name}: {files:?}");
        for f in files {
            let x = fs::read(a.path().join(&f)).unwrap();
            let y = fs::read(b.path().join(&f)).unwrap();
            assert!(x == y, "{name}: {f:?} differs between runs");
        }
    }
}

#[test]
fn seed_override_changes_the_family() {
    let run = |seed: &str| {
        let out = run_config("tameness.json", &["--seed", seed]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    assert_eq!(run("1"), run("1"));
    assert_ne!(run("1"), run("2"));
}

#[test]
fn direct_subcommands() {
    let space = r#"{"kind": "power_series_infinite", "alpha": {"form": "power", "p": 1.0}}"#;
    let out = koethe(&["spaces", "check", "--space", space]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["report"]["nuclearity"]["outcome"]["status"], "holds");
    assert_eq!(r["report"]["growth_condition"]["outcome"]["m"], 1);

    let log = r#"{"kind": "power_series_finite", "alpha": {"form": "log"}}"#;
    assert_eq!(code(&koethe(&["spaces", "check", "--space", log])), 1);

    let sym = r#"{"lower": {"form": "geometric", "r": 0.5}}"#;
    let fin = r#"{"kind": "power_series_finite", "alpha": {"form": "power", "p": 1.0}}"#;
    let out = koethe(&["symbol", "membership", "--symbol", sym, "--part", "lower", "--space", fin]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    // 2^{-j} e^{kj} is unbounded once k > log 2
    let out = koethe(&["symbol", "membership", "--symbol", sym, "--part", "lower", "--space", space]);
    assert_eq!(code(&out), 1);

    let op = r#"{"variant": "lower",
        "domain": {"kind": "power_series_finite", "alpha": {"form": "power", "p": 1.0}},
        "codomain": {"kind": "power_series_finite", "alpha": {"form": "power", "p": 2.0}},
        "symbol": {"lower": {"form": "geometric", "r": 0.36787944117144233}}}"#;
    let out = koethe(&["--format", "csv", "operator", "probe", "--operator", op, "--k", "1", "2", "--m", "1"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("N,k,m,log_ratio\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 5);

    let out = koethe(&["operator", "certify", "--operator", op, "--property", "continuity"]);
    assert_eq!(code(&out), 0);
    let out = koethe(&["cross-validate", "--operator", op]);
    assert_eq!(code(&out), 0);

    let family = r#"{"sampler": {"kind": "geometric", "r": [0.0, 0.9], "scale": [1.0, 1.0]}, "count": 4}"#;
    let out = koethe(&[
        "--n-max", "512", "family", "tame", "--family", family, "--operator", op, "--s-map", r#"{"form": "identity"}"#,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn apply_from_a_vector_file() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    fs::write(&x, "1.0\n2.0\n3.0\n").unwrap();
    let op = r#"{"variant": "upper",
        "domain": {"kind": "power_series_finite", "alpha": {"form": "power", "p": 1.0}},
        "codomain": {"kind": "power_series_finite", "alpha": {"form": "power", "p": 1.0}},
        "symbol": {"upper": {"form": "explicit", "values": [0.0, 1.0]}}}"#;
    let apply = |method: &str| {
        let out = koethe(&[
            "--format", "csv", "operator", "apply", "--operator", op, "--input", x.to_str().unwrap(), "--method", method,
        ]);
        assert_eq!(code(&out), 0);
        String::from_utf8(out.stdout).unwrap()
    };
    // superdiagonal shift
    assert_eq!(apply("dense"), "2.0\n3.0\n0.0\n");
    let fast: Vec<f64> = apply("fast").lines().map(|l| l.parse().unwrap()).collect();
    for (f, d) in fast.iter().zip([2.0, 3.0, 0.0]) {
        assert!((f - d).abs() < 1e-12, "{fast:?}");
    }

    fs::write(&x, "1.0\n\n2.0\n").unwrap();
    let out = koethe(&["operator", "apply", "--operator", op, "--input", x.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::Ok),
        Just(Status::Inconclusive),
        Just(Status::Fails),
        Just(Status::Conflict)
    ]
}

proptest! {
    #[test]
    fn exit_code_contract(statuses in prop::collection::vec(status(), 0..12)) {
        let expected = if statuses.contains(&Status::Conflict) {
            3
        } else if statuses.contains(&Status::Fails) {
            1
        } else if statuses.contains(&Status::Inconclusive) {
            2
        } else {
            0
        };
        prop_assert_eq!(exit_code(&statuses), expected);
    }
}
