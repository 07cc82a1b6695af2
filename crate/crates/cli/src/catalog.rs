use lqel::varieties::{chart_for_id, CatalogId};
use serde::{Deserialize, Serialize};

const CATALOG_IDS: [&str; 10] = [
    "veronese:2",
    "veronese:3",
    "veronese:4",
    "segre:2x2",
    "segre:2x3",
    "grassmann:2,6",
    "grassmann:2,7",
    "severi16",
    "segre:1x2",
    "grassmann:2,5",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub n: usize,
    pub a: usize,
    pub expected_delta: usize,
    pub secant_fills: bool,
}

pub fn catalog_list() -> Vec<CatalogEntry> {
    CATALOG_IDS
        .iter()
        .map(|id| {
            let chart = chart_for_id(&id.parse::<CatalogId>().expect("catalog id parses")).expect("catalog chart builds");
            let known = chart.known().expect("catalog charts carry known invariants");
            CatalogEntry {
                id: id.to_string(),
                n: chart.param_dim(),
                a: chart.ambient_dim() - chart.param_dim(),
                expected_delta: known.delta,
                secant_fills: known.secant_fills,
            }
        })
        .collect()
}
