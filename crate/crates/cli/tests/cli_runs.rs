use std::process::Command;

use lqel_cli::{analyze, emit_report, AnalysisRun, CliffordStage, Format, Verdict};

fn lqel(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lqel")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn structured_report_round_trips() {
    let run = analyze("grassmann:2,6", 2).unwrap();
    let text = emit_report(&run, Format::Structured);
    let back: AnalysisRun = serde_json::from_str(&text).unwrap();
    assert_eq!(emit_report(&back, Format::Structured), text);
    assert_eq!(back.secant, run.secant);
    assert_eq!(back.clifford, run.clifford);
    assert!(back.timings.is_empty());
}

#[test]
fn structured_keys_sorted() {
    let text = emit_report(&analyze("segre:2x3", 0).unwrap(), Format::Structured);
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert!(text.ends_with("}\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn table_rows() {
    let row = |id: &str| {
        let t = emit_report(&analyze(id, 1).unwrap(), Format::Table);
        t.lines().nth(1).unwrap().split_whitespace().map(str::to_string).collect::<Vec<_>>()
    };
    assert_eq!(row("grassmann:2,6")[1..], ["8", "6", "4", "3", "4", "2", "ok", "ok"]);
    assert_eq!(row("severi16")[1..], ["16", "10", "8", "7", "8", "8", "ok", "ok"]);
}

#[test]
fn analyze_examples() {
    let v = analyze("veronese:2", 9).unwrap();
    assert_eq!(v.secant.delta, 1);
    assert!(v.checks["divisibility"]);
    assert_eq!(v.verdict(), Verdict::Ok);

    let g = analyze("grassmann:2,5", 1).unwrap();
    assert_eq!(g.verdict(), Verdict::Rejected("secant-fills".into()));
    match &g.clifford {
        CliffordStage::Rejected { reason, .. } => assert_eq!(reason, "not applicable: secant variety fills"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn exit_codes() {
    assert_eq!(lqel(&["analyze", "segre:2x2", "--seed", "4"]).0, 0);
    assert_eq!(lqel(&["analyze", "segre:1x2"]).0, 2);
    assert_eq!(lqel(&["analyze", "segre:1x2", "--expect-reject"]).0, 0);
    assert_eq!(lqel(&["analyze", "veronese:1"]).0, 4);
    assert_eq!(lqel(&["analyze", "/nonexistent/chart.txt"]).0, 4);
    let (code, out) = lqel(&["gamma", "7"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("l = 7, p = 8, matrices = 7"));
    let (code, out) = lqel(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 11);
}

#[test]
fn cli_structured_output_is_deterministic() {
    let a = lqel(&["analyze", "grassmann:2,7", "--seed", "11", "--format", "structured"]);
    let b = lqel(&["analyze", "grassmann:2,7", "--seed", "11", "--format", "structured"]);
    assert_eq!(a, b);
}

#[test]
fn raw_chart_file() {
    let dir = std::env::temp_dir().join(format!("lqel-raw-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("segre.txt");
    // P¹ × P¹ in P³: the quadric surface, whose secant variety fills.
    std::fs::write(&path, "2 1\n# quadric surface\nt1\nt2\nt1*t2\n").unwrap();
    let run = analyze(path.to_str().unwrap(), 0).unwrap();
    assert!(!run.catalog_guarantees);
    assert_eq!(run.expected_delta, None);
    assert!(run.secant.secant_fills);
    std::fs::write(&path, "2 1\nt1\nt2\nt1*+\n").unwrap();
    assert_eq!(analyze(path.to_str().unwrap(), 0).unwrap_err().code, "raw-input");
    std::fs::remove_dir_all(&dir).unwrap();
}
