//! Clifford-module structure carried by the second fundamental form at a
//! general point of a variety whose secant variety is degenerate.

mod gamma;
mod module;

use thiserror::Error;

use crate::exactla::LinAlgError;
use crate::sff::SffError;

pub use gamma::{gamma_construction, gamma_relations_hold, kron, minimal_module_dim, GammaRep};
pub use module::{
    build_clifford_module, build_clifford_module_with_complement, module_multiplicity, q_nondegenerate,
    q_orthogonal_basis, recover_q_from_squares, verify_clifford_relations, Chirality, CliffordModuleData,
    Multiplicity, RelationReport, RelationResidual,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("not applicable: secant variety fills")]
    SecantFills,
    #[error("not applicable: key identity fails (S = {s})")]
    NotLqel { s: usize },
    #[error("not applicable: secant deficiency is zero")]
    DeltaZero,
    #[error("II_v is not injective on <v> + U, or II(K, U) leaves its image")]
    DiagramExactnessBreach,
    #[error("{which} does not square to a scalar")]
    SquareNotScalar { which: String },
    #[error("module dimension {dim_w} is not divisible by {p}")]
    DivisibilityBreach { p: usize, dim_w: usize },
    #[error("supplied U is not a complement of <v, ker II_v>")]
    BadComplement,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Sff(#[from] SffError),
}

impl CliffordError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            CliffordError::SecantFills => "secant-fills",
            CliffordError::NotLqel { .. } => "not-lqel",
            CliffordError::DeltaZero => "delta-zero",
            CliffordError::DiagramExactnessBreach => "diagram-exactness",
            CliffordError::SquareNotScalar { .. } => "square-not-scalar",
            CliffordError::DivisibilityBreach { .. } => "divisibility",
            CliffordError::BadComplement => "bad-complement",
            CliffordError::LinAlg(_) => "linear-algebra",
            CliffordError::Sff(_) => "sff",
        }
    }
}

/// `2^⌊(δ−1)/2⌋` divides `n − δ`.
pub fn divisibility_check(n: usize, delta: usize) -> bool {
    if delta == 0 || delta > n {
        return false;
    }
    let p = 1usize << ((delta - 1) / 2).min(usize::BITS as usize - 1);
    (n - delta).is_multiple_of(p)
}

/// `δ ≤ ⌊(n − 1)/2⌋` once `n ≥ 17`; smaller `n` are unconstrained.
pub fn delta_bound_check(n: usize, delta: usize) -> bool {
    n < 17 || delta <= (n.saturating_sub(1)) / 2
}
