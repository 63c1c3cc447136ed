//! Drives the `patinfo` binary end to end.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn patinfo(cache: &Path, args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_patinfo"))
        .args(args)
        .env("PATINFO_CACHE", cache.join("calibration.json"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn patinfo");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_constant_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let o = patinfo(
        dir.path(),
        &["analyze", "--estimators", "min,mshannon", "--format", "csv"],
        &[b'z'; 1000],
    );
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row.contains(",9.967226,9.967226,"), "{row}");
    }
}

#[test]
fn analyze_fibonacci_tokens() {
    let dir = tempfile::tempdir().unwrap();
    let o = patinfo(
        dir.path(),
        &[
            "analyze",
            "--mode",
            "token",
            "--estimators",
            "mshannon,gzip",
            "--format",
            "json",
            &data("fibonacci.txt"),
        ],
        b"",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &doc["reports"][0];
    assert_eq!(r["n"], 1000);
    assert_eq!(r["k_inferred"], 10);
    assert_eq!(r["mode"], "token");
    assert_eq!(r["calibration_key"], "1000:10:u32le:gzip9:24301");
    let s = r["estimates"][0]["clamped_bits"].as_f64().unwrap();
    let t = r["estimates"][1]["clamped_bits"].as_f64().unwrap();
    assert!(t <= s, "T={t} S={s}");
    assert!(dir.path().join("calibration.json").exists());
}

#[test]
fn analyze_files_keep_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let names = [
        "random.txt",
        "english.txt",
        "structured.txt",
        "fibonacci.txt",
    ];
    let mut args = vec![
        "analyze",
        "--mode",
        "char",
        "--estimators",
        "min",
        "--format",
        "csv",
    ];
    let paths: Vec<String> = names.iter().map(|n| data(n)).collect();
    args.extend(paths.iter().map(String::as_str));
    let o = patinfo(dir.path(), &args, b"");
    assert!(o.status.success());
    let sources: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(sources, paths);
}

#[test]
fn analyze_declared_alphabet() {
    let dir = tempfile::tempdir().unwrap();
    let o = patinfo(
        dir.path(),
        &[
            "analyze",
            "--estimators",
            "max",
            "--alphabet-size",
            "4",
            "--format",
            "csv",
        ],
        b"abab",
    );
    assert!(o.status.success());
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    // log2(1 + 4 + 16 + 64 + 256)
    assert!(
        row.starts_with("-,byte,4,2,4,max,8.413628,8.413628,"),
        "{row}"
    );
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["analyze", "--estimators", "nope"],
        vec!["analyze", "/no/such/file"],
        vec!["analyze", "--mode", "words"],
        vec!["generate", "--kind", "fib"],
        vec!["compare", "--corpus", "/no/such/dir"],
        vec!["check", "--properties", "beauty"],
        vec!["frobnicate"],
    ] {
        let o = patinfo(dir.path(), &args, b"");
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| stdout(&patinfo(dir.path(), args, b""));
    assert_eq!(
        run(&["generate", "--kind", "constant", "--length", "5", "--symbol", "a", "--seed", "0"]),
        "aaaaa"
    );
    assert_eq!(
        run(&["generate", "--kind", "fib", "--length", "16", "--seed", "0"]),
        "0112358132134558"
    );
    let circles = run(&[
        "generate", "--kind", "circles", "--width", "40", "--height", "25",
    ]);
    assert_eq!(circles.len(), 1000);
    let a = run(&[
        "generate", "--kind", "uniform", "--length", "64", "--k", "4", "--seed", "9",
    ]);
    let b = run(&[
        "generate", "--kind", "uniform", "--length", "64", "--k", "4", "--seed", "9",
    ]);
    assert_eq!(a, b);
}

#[test]
fn structured_fixture_matches_generator() {
    let dir = tempfile::tempdir().unwrap();
    let o = patinfo(
        dir.path(),
        &[
            "generate",
            "--kind",
            "circles",
            "--separator",
            " ",
            "--wrap",
            "40",
        ],
        b"",
    );
    assert_eq!(o.stdout, std::fs::read(data("structured.txt")).unwrap());
}

#[test]
fn compare_writes_svg_and_passes_checks() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("chart.svg");
    let o = patinfo(
        dir.path(),
        &[
            "compare",
            "--corpus",
            &data(""),
            "--svg",
            svg.to_str().unwrap(),
        ],
        b"",
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let table = stdout(&o);
    for row in ["fibonacci", "english", "random", "structured"] {
        assert!(table.contains(row));
    }
    assert_eq!(table.matches("PASS").count(), 4);
    let chart = std::fs::read_to_string(svg).unwrap();
    assert_eq!(chart.matches("<rect").count(), 16);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = patinfo(
        dir.path(),
        &["check", "--estimators", "min", "--trials", "1000"],
        b"",
    );
    assert_eq!(o.status.code(), Some(0));
    let o = patinfo(
        dir.path(),
        &[
            "check",
            "--estimators",
            "mshannon",
            "--properties",
            "normalization,reversibility",
            "--trials",
            "300",
        ],
        b"",
    );
    assert_eq!(o.status.code(), Some(0));
    let o = patinfo(
        dir.path(),
        &[
            "check",
            "--estimators",
            "gzip",
            "--properties",
            "subadditivity",
            "--trials",
            "100",
            "--format",
            "json",
        ],
        b"",
    );
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &doc["property_reports"][0];
    assert_eq!(r["class"], "observe");
    assert!(r["violations"].as_u64().unwrap() > 0);
}

#[test]
fn corrupt_cache_is_ignored_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("calibration.json"), b"{not json").unwrap();
    let o = patinfo(
        dir.path(),
        &["analyze", "--estimators", "gzip"],
        b"hello world",
    );
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}
