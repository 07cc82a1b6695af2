//! Local charts of the classical secant-defective varieties: quadratic
//! Veronese embeddings, binary Segre products, Grassmannians of 2-planes and
//! the 16-dimensional Severi variety of the exceptional Jordan algebra, plus
//! their generic linear projections.

mod catalog_id;
mod chart;
mod octonion;
mod projection;

use crate::exactla::Scalar;
use crate::poly::Poly;

pub use catalog_id::CatalogId;
pub use chart::{Chart, KnownInvariants};
pub use octonion::{basis_product, octonion_mul, Octonion, FANO_TRIPLES};
pub use projection::{project_chart, projected_chart, projection_matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("{family} requires {requirement}, got {got}")]
    OutOfRange {
        family: &'static str,
        requirement: &'static str,
        got: String,
    },
    #[error("coordinate {coordinate} has {found} variables, expected {expected}")]
    Arity {
        coordinate: usize,
        expected: usize,
        found: usize,
    },
    #[error("coordinate {coordinate} has a nonzero constant term; charts are centered at the base point")]
    NotCentered { coordinate: usize },
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("raw chart line {line}: {msg}")]
    RawInput { line: usize, msg: String },
    #[error("projection center lies in the embedded tangent space at the base point")]
    CenterInTangentSpace,
    #[error("projection degenerate: {0}")]
    ProjectionDegenerate(String),
}

/// Secant variety of an `n`-fold with deficiency `δ` fills `P^{ambient}`.
pub fn secant_fills(n: usize, delta: usize, ambient: usize) -> bool {
    2 * n + 1 - delta.min(2 * n + 1) >= ambient
}

fn graph_chart(label: String, n: usize, quadrics: Vec<Poly>, delta: usize) -> Chart {
    let mut coords: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
    coords.extend(quadrics);
    let ambient = coords.len();
    Chart::new(label, n, coords)
        .expect("catalog charts are centered")
        .with_known(KnownInvariants {
            delta,
            secant_fills: secant_fills(n, delta, ambient),
        })
}

/// `ν₂(P^n) ⊆ P^{n(n+3)/2}`: coordinates `t_i` then `t_i·t_j` for `i ≤ j`.
pub fn veronese_chart(n: usize) -> Result<Chart, VarietyError> {
    if n < 2 {
        return Err(VarietyError::OutOfRange {
            family: "veronese",
            requirement: "n >= 2",
            got: n.to_string(),
        });
    }
    let t = |k| Poly::var(n, k);
    let quadrics = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| &t(i) * &t(j)).collect();
    Ok(graph_chart(CatalogId::Veronese(n).to_string(), n, quadrics, 1))
}

/// `P^m × P^n ⊆ P^{mn+m+n}`: coordinates `s_i`, `t_j`, then `s_i·t_j`.
pub fn segre_chart(m: usize, n: usize) -> Result<Chart, VarietyError> {
    if m + n < 3 {
        return Err(VarietyError::OutOfRange {
            family: "segre",
            requirement: "m + n >= 3",
            got: format!("{m}x{n}"),
        });
    }
    let dim = m + n;
    let quadrics = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| &Poly::var(dim, i) * &Poly::var(dim, m + j))
        .collect();
    Ok(graph_chart(CatalogId::Segre(m, n).to_string(), dim, quadrics, 2))
}

/// `G(2, n) ⊆ P^{(n−2)(n+1)/2}` near the span of the first two coordinate
/// vectors: parameters `a_{r,j}` (row-major, `r ∈ {1,2}`, `j ∈ 1..n−2`), then
/// the minors `a_{1,j}a_{2,k} − a_{1,k}a_{2,j}` for `j < k`.
pub fn grassmann_chart(n: usize) -> Result<Chart, VarietyError> {
    if n < 5 {
        return Err(VarietyError::OutOfRange {
            family: "grassmann",
            requirement: "n >= 5",
            got: n.to_string(),
        });
    }
    let k = n - 2;
    let dim = 2 * k;
    let a = |r: usize, j: usize| Poly::var(dim, r * k + j);
    let minors = (0..k)
        .flat_map(|j| (j + 1..k).map(move |l| (j, l)))
        .map(|(j, l)| &(&a(0, j) * &a(1, l)) - &(&a(0, l) * &a(1, j)))
        .collect();
    Ok(graph_chart(CatalogId::Grassmann(n).to_string(), dim, minors, 4))
}

/// The rank-one chart of the exceptional Jordan algebra around `diag(1,0,0)`:
/// parameters `(u, v) ∈ O²`, coordinates `u`, `v`, `N(u)`, `N(v)`, `conj(u)·v`.
pub fn severi16_chart() -> Chart {
    let dim = 16;
    let u: [Poly; 8] = std::array::from_fn(|k| Poly::var(dim, k));
    let v: [Poly; 8] = std::array::from_fn(|k| Poly::var(dim, 8 + k));
    let norm = |x: &[Poly; 8]| x.iter().fold(Poly::zero(dim), |acc, c| &acc + &(c * c));
    let mut u_bar = u.clone();
    for c in u_bar.iter_mut().skip(1) {
        *c = -&*c;
    }
    let off_diagonal = octonion::product_by_table(&u_bar, &v, Poly::zero(dim), |a, b, s| (a * b).scale(&Scalar::from_int(s)));
    let mut quadrics = vec![norm(&u), norm(&v)];
    quadrics.extend(off_diagonal);
    graph_chart(CatalogId::Severi16.to_string(), dim, quadrics, 8)
}

/// Builds the chart named by a catalog id.
pub fn chart_for_id(id: &CatalogId) -> Result<Chart, VarietyError> {
    match id {
        CatalogId::Veronese(n) => veronese_chart(*n),
        CatalogId::Segre(m, n) => segre_chart(*m, *n),
        CatalogId::Grassmann(n) => grassmann_chart(*n),
        CatalogId::Severi16 => Ok(severi16_chart()),
        CatalogId::Projected { source, seed, count } => projected_chart(source, *seed, *count),
    }
}

/// True when the first `n` coordinates are exactly the parameters.
pub fn is_graph(chart: &Chart) -> bool {
    let n = chart.param_dim();
    chart.ambient_dim() >= n && (0..n).all(|k| chart.coordinates()[k] == Poly::var(n, k))
}
