//! Exact linear algebra over the Gaussian rationals Q(i).
//!
//! Every rank, kernel and subspace comparison downstream is computed here, so
//! no quantity in the crate depends on a numerical tolerance.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{dot, Echelon, Matrix};
pub use scalar::{ParseScalarError, Scalar};
pub use subspace::{coords_in_basis, kernel, unit_vector, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("target vector is not in the span of the basis")]
    NotInSpan,
    #[error("basis vectors are linearly dependent")]
    Dependent,
}
