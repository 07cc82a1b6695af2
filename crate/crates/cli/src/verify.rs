use std::collections::BTreeSet;

use crate::catalog::{catalog_list, CatalogEntry};
use crate::report::{emit_report, Format};
use crate::run::{analyze, AnalysisRun, CliffordStage, Verdict};

#[derive(Debug, Clone)]
pub struct EntryVerification {
    pub entry: CatalogEntry,
    /// One run per seed `0..seeds`.
    pub runs: Vec<AnalysisRun>,
    pub problems: Vec<String>,
}

impl EntryVerification {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub entries: Vec<EntryVerification>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(EntryVerification::ok)
    }
}

/// Boolean verdicts that must not depend on the seed.
fn verdict_key(run: &AnalysisRun) -> String {
    let stage = match &run.clifford {
        CliffordStage::Built(c) => format!(
            "built dims=({},{}) exact={} nondeg={} m={}",
            c.dim_k,
            c.dim_w,
            c.residuals.is_empty(),
            c.q_nondegenerate,
            c.multiplicity.m
        ),
        CliffordStage::Rejected { code, .. } => format!("rejected {code}"),
        CliffordStage::Breach { code, .. } => format!("breach {code}"),
    };
    format!("δ={} {:?} {stage}", run.secant.delta, run.checks)
}

fn verify_entry(entry: CatalogEntry, seeds: u64) -> EntryVerification {
    let mut problems = Vec::new();
    let mut runs = Vec::new();
    for seed in 0..seeds {
        match analyze(&entry.id, seed) {
            Ok(run) => runs.push(run),
            Err(e) => problems.push(format!("seed {seed}: {e}")),
        }
    }
    for run in &runs {
        let expected = if entry.secant_fills {
            Verdict::Rejected("secant-fills".into())
        } else {
            Verdict::Ok
        };
        let got = run.verdict();
        if got != expected {
            problems.push(format!("seed {}: verdict {got:?}, expected {expected:?}", run.seed));
        }
    }
    let keys: BTreeSet<String> = runs.iter().map(verdict_key).collect();
    if keys.len() > 1 {
        problems.push(format!("verdicts depend on the seed: {keys:?}"));
    }
    if let Some(first) = runs.first() {
        match analyze(&entry.id, first.seed) {
            Ok(again) if emit_report(&again, Format::Structured) == emit_report(first, Format::Structured) => {}
            _ => problems.push("structured report is not deterministic".into()),
        }
    }
    EntryVerification { entry, runs, problems }
}

/// Runs every catalog entry on seeds `0..seeds`, entries in parallel.
pub fn verify_all(seeds: u64) -> VerifyReport {
    let entries = std::thread::scope(|scope| {
        let handles: Vec<_> = catalog_list()
            .into_iter()
            .map(|entry| scope.spawn(move || verify_entry(entry, seeds)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    VerifyReport { entries }
}
