use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bellqec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellqec")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn exact_run_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bell.csv");
    let r = bellqec(&["--scenario", "qrc-bipartite-bell", "--k", "1", "--p", "0.1", "--out", path_str(&out)]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "scenario,k,channel,p,method,fidelity,stderr,samples,seed,wall_time");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["qrc-bipartite-bell", "1", "bitflip", "0.1", "exact"]);
    let f: f64 = row[5].parse().unwrap();
    assert!((f - 0.972403).abs() < 1e-6, "{f}");
    assert_eq!(row[7], "64");
    assert!(lines.next().is_none());
}

#[test]
fn stdout_when_no_out() {
    let r = bellqec(&["--scenario", "unencoded", "--p", "0.5", "--no-wall-time"]);
    assert_eq!(code(&r), 0);
    let text = String::from_utf8(r.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "unencoded");
    assert_eq!(row[1], "0");
    assert!((row[5].parse::<f64>().unwrap() - 0.5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn invalid_configuration_exits_2() {
    for args in [
        &["--p", "1.5"][..],
        &["--p", "-0.1"],
        &["--scenario", "nope"],
        &["--k", "0"],
        &["--k", "9", "--scenario", "qrc-bipartite-bell"],
        &["--channel", "depolarizing"],
        &["--method", "quantum"],
        &["--format", "xml"],
        &["--p-range", "0:1"],
        &["--p-range", "0:1:0"],
    ] {
        let r = bellqec(args);
        assert_eq!(code(&r), 2, "{args:?}: {}", String::from_utf8_lossy(&r.stderr));
        assert!(!r.stderr.is_empty());
    }
    assert_eq!(code(&bellqec(&["verify", "--only", "eq99"])), 2);
    assert_eq!(code(&bellqec(&["table", "--k", "4"])), 2);
}

#[test]
fn empty_range_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty.csv");
    let r = bellqec(&["--p-range", "0.5:0.1:0.1", "--out", path_str(&out)]);
    assert_eq!(code(&r), 0);
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1);
}

#[test]
fn fixed_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let mut args = vec![
            "--scenario",
            "qrc-single,longdistance-nocc",
            "--k",
            "1,2",
            "--p-range",
            "0.05:0.3:0.05",
            "--method",
            "mc",
            "--samples",
            "5000",
            "--seed",
            "17",
            "--no-wall-time",
            "--out",
            path_str(&out),
        ];
        args.extend_from_slice(extra);
        assert_eq!(code(&bellqec(&args)), 0);
        fs::read(&out).unwrap()
    };
    let a = run("a.csv", &[]);
    let b = run("b.csv", &[]);
    let c = run("c.csv", &["--sequential"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 2 * 2 * 6);
}

#[test]
fn json_and_gnuplot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("rows.json");
    let dat = dir.path().join("rows.dat");
    let r = bellqec(&[
        "--scenario",
        "qrc-single,qrc-bipartite-bell",
        "--p",
        "0.1,0.2",
        "--format",
        "json",
        "--out",
        path_str(&json),
        "--gnuplot",
        path_str(&dat),
    ]);
    assert_eq!(code(&r), 0);
    let text = fs::read_to_string(&json).unwrap();
    assert!(text.trim_start().starts_with('['));
    assert_eq!(text.matches("\"scenario\"").count(), 4);
    let dat = fs::read_to_string(&dat).unwrap();
    assert_eq!(dat.trim_end().split("\n\n\n").count(), 2);
}

#[test]
fn trace_is_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let r = bellqec(&["--scenario", "longdistance-cc", "--k", "1", "--p", "0.1", "--trace", path_str(&trace)]);
    assert_eq!(code(&r), 0);
    let text = fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2 * 64);
    for line in &lines {
        assert!(line.starts_with('{') && line.ends_with('}'), "{line}");
        assert!(line.contains("\"round\"") && line.contains("\"sender\"") && line.contains("\"bits\""), "{line}");
    }
    assert!(lines[0].contains("\"alice\"") && lines[1].contains("\"bob\""));
}

#[test]
fn verify_subset_passes() {
    let r = bellqec(&["verify", "--only", "coefficients,table,entropy"]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stdout));
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.contains("[PASS] coefficients"));
    assert!(text.contains("overcounts"));
    assert!(text.contains("verify: 3/3 checks passed"));
}

#[test]
fn verify_json_report() {
    let r = bellqec(&["verify", "--only", "entropy", "--json"]);
    assert_eq!(code(&r), 0);
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.contains("\"id\": \"entropy\"") && text.contains("\"passed\": true"));
}

const GOLDEN: &str = include_str!("../../core/data/bell_k1_syndromes.csv");

#[test]
fn corrupted_golden_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let clean = dir.path().join("clean.csv");
    fs::write(&clean, GOLDEN).unwrap();
    let r = bellqec(&["verify", "--only", "table", "--golden", path_str(&clean)]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stdout));

    let mut rows: Vec<String> = GOLDEN.lines().map(str::to_owned).collect();
    let (error, syndrome) = rows[5].split_once(',').unwrap();
    let flipped: String = syndrome
        .chars()
        .map(|c| match c {
            '+' => '-',
            '-' => '+',
            c => c,
        })
        .collect();
    rows[5] = format!("{error},{flipped}");
    let corrupted = dir.path().join("corrupted.csv");
    fs::write(&corrupted, rows.join("\n")).unwrap();
    let r = bellqec(&["verify", "--only", "table", "--golden", path_str(&corrupted)]);
    assert_eq!(code(&r), 1, "{}", String::from_utf8_lossy(&r.stdout));
    assert!(String::from_utf8(r.stdout).unwrap().contains("[FAIL] table"));
}

#[test]
fn table_export() {
    let r = bellqec(&["table", "--k", "1"]);
    assert_eq!(code(&r), 0);
    let text = String::from_utf8(r.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "error,syndrome,class_id,min_weight_rep");
    assert_eq!(text.lines().count(), 1 + 64);
}

#[test]
fn missing_golden_is_runtime_error() {
    let r = bellqec(&["verify", "--only", "table", "--golden", "/nonexistent/golden.csv"]);
    assert_eq!(code(&r), 1);
}
