use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use lqel::clifford::{
    build_clifford_module, delta_bound_check, divisibility_check, minimal_module_dim, module_multiplicity,
    q_nondegenerate, recover_q_from_squares, verify_clifford_relations, CliffordError, Multiplicity,
    RelationResidual,
};
use lqel::exactla::Matrix;
use lqel::sampling::rng_from_seed;
use lqel::secantgeom::{key_identity_check, tangential_projection_dim, SecantError, SecantReport};
use lqel::sff::{sample_general_vector, second_fundamental_form, SffError};
use lqel::varieties::{chart_for_id, CatalogId, Chart, VarietyError};
use serde::{Deserialize, Serialize};

use crate::{EXIT_BREACH, EXIT_INPUT, EXIT_OK, EXIT_REJECTED};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordSummary {
    pub dim_k: usize,
    pub dim_w: usize,
    pub q: Matrix,
    pub q_rank: usize,
    pub q_nondegenerate: bool,
    pub relations_checked: usize,
    pub residuals: Vec<RelationResidual>,
    pub multiplicity: Multiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CliffordStage {
    Built(CliffordSummary),
    /// A hypothesis of the construction fails; expected for degenerate inputs.
    Rejected { code: String, reason: String },
    /// A consequence of the construction fails.
    Breach { code: String, reason: String },
}

/// One seeded pipeline run. `timings` is kept out of the serialized form so
/// that equal `(catalog_id, seed)` give byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRun {
    pub catalog_id: String,
    pub seed: u64,
    /// `false` for raw charts: predicates are reported, nothing is asserted.
    pub catalog_guarantees: bool,
    pub expected_delta: Option<usize>,
    pub expected_secant_fills: Option<bool>,
    pub secant: SecantReport,
    /// `dim Z` from the differential of the tangential projection.
    pub tangential_dim_z: usize,
    pub clifford: CliffordStage,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip)]
    pub timings: Vec<StageTiming>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Rejected(String),
    Breach(Vec<String>),
}

/// Checks that must hold on every catalog entry whose Clifford stage was built.
const BUILT_INVARIANTS: [&str; 7] = [
    "relations_exact",
    "q_cross_check",
    "q_nondegenerate",
    "module_dims",
    "divisibility",
    "multiplicity_integral",
    "delta_bound",
];

/// Checks that must hold on every catalog entry that was not rejected as `δ = 0`.
const ENTRY_INVARIANTS: [&str; 3] = ["delta_matches_catalog", "secant_fills_matches_catalog", "oracle_agreement"];

impl AnalysisRun {
    pub fn verdict(&self) -> Verdict {
        let mut breaches = Vec::new();
        if let CliffordStage::Breach { code, .. } = &self.clifford {
            breaches.push(code.clone());
        }
        if self.catalog_guarantees {
            let delta_zero = matches!(&self.clifford, CliffordStage::Rejected { code, .. } if code == "delta-zero");
            let mut required: Vec<&str> = Vec::new();
            if !delta_zero {
                required.extend(ENTRY_INVARIANTS);
            }
            if matches!(self.clifford, CliffordStage::Built(_)) {
                required.extend(BUILT_INVARIANTS);
            }
            breaches.extend(
                required
                    .into_iter()
                    .filter(|k| self.checks.get(*k) == Some(&false))
                    .map(str::to_string),
            );
        }
        if !breaches.is_empty() {
            return Verdict::Breach(breaches);
        }
        match &self.clifford {
            CliffordStage::Rejected { code, .. } => Verdict::Rejected(code.clone()),
            _ => Verdict::Ok,
        }
    }

    pub fn exit_code(&self, expect_reject: bool) -> i32 {
        match self.verdict() {
            Verdict::Ok => EXIT_OK,
            Verdict::Rejected(_) if expect_reject => EXIT_OK,
            Verdict::Rejected(_) => EXIT_REJECTED,
            Verdict::Breach(_) => EXIT_BREACH,
        }
    }
}

/// A run that produced no report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{code}: {message}")]
pub struct AnalyzeError {
    pub code: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl AnalyzeError {
    fn input(code: &'static str, message: impl Into<String>) -> Self {
        AnalyzeError {
            code,
            message: message.into(),
            exit_code: EXIT_INPUT,
        }
    }

    fn breach(code: &'static str, message: impl Into<String>) -> Self {
        AnalyzeError {
            code,
            message: message.into(),
            exit_code: EXIT_BREACH,
        }
    }
}

impl From<VarietyError> for AnalyzeError {
    fn from(e: VarietyError) -> Self {
        let code = match e {
            VarietyError::UnknownId(_) => "unknown-id",
            VarietyError::OutOfRange { .. } => "out-of-range",
            VarietyError::RawInput { .. } | VarietyError::Arity { .. } => "raw-input",
            VarietyError::NotCentered { .. } => "not-centered",
            VarietyError::CenterInTangentSpace | VarietyError::ProjectionDegenerate(_) => "projection-failed",
        };
        AnalyzeError::input(code, e.to_string())
    }
}

impl From<SffError> for AnalyzeError {
    fn from(e: SffError) -> Self {
        match e {
            SffError::NotImmersion { .. } => AnalyzeError::input("not-immersion", e.to_string()),
            SffError::SamplingBudget { .. } => AnalyzeError::breach("sampling-budget", e.to_string()),
            SffError::LinAlg(_) => AnalyzeError::breach("linear-algebra", e.to_string()),
        }
    }
}

impl From<SecantError> for AnalyzeError {
    fn from(e: SecantError) -> Self {
        let code = match e {
            SecantError::BaseLocus => "base-locus",
            SecantError::SampleOnTangentSpace { .. } => "sampling-budget",
            SecantError::ContainmentBreach => "containment",
            SecantError::Sff(inner) => return inner.into(),
            SecantError::LinAlg(_) => "linear-algebra",
        };
        AnalyzeError::breach(code, e.to_string())
    }
}

/// Runs the pipeline on a catalog id, or on a raw chart file when the
/// argument is not a catalog id but names an existing file.
pub fn analyze(id_or_path: &str, seed: u64) -> Result<AnalysisRun, AnalyzeError> {
    match id_or_path.parse::<CatalogId>() {
        Ok(id) => {
            let chart = chart_for_id(&id)?;
            analyze_chart(&chart, seed, true)
        }
        Err(parse_err) => {
            let path = Path::new(id_or_path);
            if !path.is_file() {
                return Err(parse_err.into());
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| AnalyzeError::input("io", format!("{}: {e}", path.display())))?;
            let chart = Chart::parse_raw(id_or_path, &text)?;
            analyze_chart(&chart, seed, false)
        }
    }
}

struct Clock {
    timings: Vec<StageTiming>,
    last: Instant,
}

impl Clock {
    fn new() -> Self {
        Clock {
            timings: Vec::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push(StageTiming {
            stage: stage.to_string(),
            elapsed: now - self.last,
        });
        self.last = now;
    }
}

fn rejection(e: &CliffordError) -> CliffordStage {
    let stage = |code: &str| (code.to_string(), e.to_string());
    match e {
        CliffordError::SecantFills | CliffordError::NotLqel { .. } | CliffordError::DeltaZero => {
            let (code, reason) = stage(e.code());
            CliffordStage::Rejected { code, reason }
        }
        _ => {
            let (code, reason) = stage(e.code());
            CliffordStage::Breach { code, reason }
        }
    }
}

/// Runs the pipeline on an explicit chart. All randomness after chart
/// construction comes from one generator seeded with `seed`.
pub fn analyze_chart(chart: &Chart, seed: u64, catalog_guarantees: bool) -> Result<AnalysisRun, AnalyzeError> {
    let mut clock = Clock::new();
    let mut rng = rng_from_seed(seed);
    let forms = second_fundamental_form(chart)?;
    clock.lap("sff");
    let general = sample_general_vector(&forms, &mut rng)?;
    let secant = key_identity_check(&forms, &general.v)?;
    clock.lap("secant");
    let tangential_dim_z = tangential_projection_dim(chart, &forms, &mut rng)?;
    clock.lap("tangential-projection");

    let (n, delta) = (secant.n, secant.delta);
    let known = chart.known().filter(|_| catalog_guarantees);
    let mut checks = BTreeMap::new();
    checks.insert("key_identity".to_string(), secant.key_identity_holds);
    checks.insert("oracle_agreement".to_string(), tangential_dim_z == secant.dim_z);
    if let Some(k) = known {
        checks.insert("delta_matches_catalog".to_string(), k.delta == delta);
        checks.insert("secant_fills_matches_catalog".to_string(), k.secant_fills == secant.secant_fills);
    }

    let clifford = if tangential_dim_z >= n {
        rejection(&CliffordError::DeltaZero)
    } else {
        match build_clifford_module(&forms, &secant) {
            Err(e) => rejection(&e),
            Ok(d) => {
                clock.lap("clifford-module");
                let rel = verify_clifford_relations(&d);
                checks.insert("relations_exact".to_string(), rel.is_exact());
                checks.insert(
                    "q_cross_check".to_string(),
                    recover_q_from_squares(&d).map(|q| q == d.q).unwrap_or(false),
                );
                let nondeg = q_nondegenerate(&d.q);
                checks.insert("q_nondegenerate".to_string(), nondeg);
                checks.insert(
                    "module_dims".to_string(),
                    d.form_dim() == delta - 1 && d.module_dim() == n - delta,
                );
                checks.insert("divisibility".to_string(), divisibility_check(n, delta));
                checks.insert("delta_bound".to_string(), delta_bound_check(n, delta));
                let p = minimal_module_dim(d.form_dim());
                checks.insert("multiplicity_integral".to_string(), d.module_dim() % p == 0);
                clock.lap("relations");
                match module_multiplicity(&d) {
                    Err(e) => rejection(&e),
                    Ok(multiplicity) => CliffordStage::Built(CliffordSummary {
                        dim_k: d.form_dim(),
                        dim_w: d.module_dim(),
                        q_rank: d.q.rank(),
                        q: d.q,
                        q_nondegenerate: nondeg,
                        relations_checked: rel.pairs_checked,
                        residuals: rel.residuals,
                        multiplicity,
                    }),
                }
            }
        }
    };
    clock.lap("multiplicity");

    Ok(AnalysisRun {
        catalog_id: chart.label().to_string(),
        seed,
        catalog_guarantees,
        expected_delta: known.map(|k| k.delta),
        expected_secant_fills: known.map(|k| k.secant_fills),
        secant,
        tangential_dim_z,
        clifford,
        checks,
        timings: clock.timings,
    })
}

