use std::fmt::Write;
use std::str::FromStr;

use crate::run::{AnalysisRun, CliffordStage, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown format {0:?}; expected table or structured")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "structured" => Ok(Format::Structured),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

const HEADER: [&str; 9] = ["id", "n", "a", "δ", "dim K", "dim W", "p", "relations", "divisibility"];

fn row(run: &AnalysisRun) -> [String; 9] {
    let s = &run.secant;
    let (k, w, p, relations) = match &run.clifford {
        CliffordStage::Built(c) => {
            let verdict = if c.residuals.is_empty() { "ok" } else { "FAIL" };
            (
                c.dim_k.to_string(),
                c.dim_w.to_string(),
                c.multiplicity.p.to_string(),
                verdict.to_string(),
            )
        }
        CliffordStage::Rejected { code, .. } => ("-".into(), "-".into(), "-".into(), format!("rejected:{code}")),
        CliffordStage::Breach { code, .. } => ("-".into(), "-".into(), "-".into(), format!("breach:{code}")),
    };
    let divisibility = match run.checks.get("divisibility") {
        Some(true) => "ok",
        Some(false) => "FAIL",
        None => "-",
    };
    [
        run.catalog_id.clone(),
        s.n.to_string(),
        s.a.to_string(),
        s.delta.to_string(),
        k,
        w,
        p,
        relations,
        divisibility.to_string(),
    ]
}

/// One aligned row per run under a shared header.
pub fn render_table(runs: &[&AnalysisRun]) -> String {
    let rows: Vec<[String; 9]> = runs.iter().map(|r| row(r)).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain([HEADER[c].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).expect("write to string");
    };
    line(HEADER.to_vec());
    for r in &rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

/// Table: header plus one row. Structured: key-sorted pretty JSON with a
/// trailing newline.
pub fn emit_report(run: &AnalysisRun, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = render_table(&[run]);
            match run.verdict() {
                Verdict::Ok => {}
                Verdict::Rejected(code) => writeln!(out, "rejected: {code}").expect("write to string"),
                Verdict::Breach(codes) => writeln!(out, "INVARIANT BREACH: {}", codes.join(", ")).expect("write to string"),
            }
            out
        }
        Format::Structured => {
            // serde_json::Value keeps object keys in a BTreeMap, so this sorts them.
            let value = serde_json::to_value(run).expect("reports serialize");
            let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_formats() {
        assert_eq!("table".parse::<Format>(), Ok(Format::Table));
        assert_eq!("structured".parse::<Format>(), Ok(Format::Structured));
        assert_eq!("yaml".parse::<Format>(), Err(UnknownFormat("yaml".into())));
    }
}
