//! Seeded pipeline runner over the variety catalog: chart, second fundamental
//! form, secant invariants, Clifford module, predicates.

mod catalog;
mod report;
mod run;
mod verify;

pub use catalog::{catalog_list, CatalogEntry};
pub use report::{emit_report, render_table, Format, UnknownFormat};
pub use run::{
    analyze, analyze_chart, AnalysisRun, AnalyzeError, CliffordStage, CliffordSummary, StageTiming, Verdict,
};
pub use verify::{verify_all, EntryVerification, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_BREACH: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
