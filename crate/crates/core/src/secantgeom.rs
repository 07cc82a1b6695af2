//! Secant invariants at a general point, read off the second fundamental form.
//!
//! For a general tangent vector `v`:
//!
//! * `⟨v, ker II_v⟩` is the kernel of the derivative of `[v] ↦ [II(v, v)]`,
//!   so `δ = dim ⟨v, ker II_v⟩ = n − rank II_v + 1` and `dim Z = n − δ`;
//! * `Ann(v) = II_v(T)^⊥ ⊆ N*` has dimension `codim Z = codim Sec(X)`;
//! * `Singloc(A)` is the common kernel of the quadrics of `A`, and
//!   `S = dim Singloc(Ann(v)) − dim ⟨v, ker II_v⟩` is the dimension of a
//!   general Gauss-map fibre of `Z`. The key identity is `S = 0`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactla::{kernel, LinAlgError, Matrix, Scalar, Subspace};
use crate::sampling::{small_int_vector, SeededRng, RESAMPLE_BUDGET};
use crate::sff::{quadric_of_covector, sff_apply, sff_v_map, FundamentalForms, SffError};
use crate::varieties::Chart;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SecantError {
    #[error("v lies in the base locus: II(v, v) = 0")]
    BaseLocus,
    #[error("sample point lies on the embedded tangent space; no usable point after {attempts} attempts")]
    SampleOnTangentSpace { attempts: usize },
    #[error("⟨v, ker II_v⟩ is not contained in Singloc(Ann(v))")]
    ContainmentBreach,
    #[error(transparent)]
    Sff(#[from] SffError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Everything the secant analysis derives from `(II, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub n: usize,
    pub a: usize,
    pub v: Vec<Scalar>,
    pub delta: usize,
    pub dim_z: usize,
    pub dim_sec: usize,
    pub codim_sec: usize,
    pub dim_ann: usize,
    pub ann: Subspace,
    pub ker_iiv: Subspace,
    pub span_v_ker: Subspace,
    pub singloc_ann: Subspace,
    pub landsberg_s: usize,
    pub gauss_fibre_dim_z: usize,
    pub key_identity_holds: bool,
    pub secant_fills: bool,
}

fn check_not_base_locus(forms: &FundamentalForms, v: &[Scalar]) -> Result<(), SecantError> {
    if sff_apply(forms, v, v)?.iter().all(Scalar::is_zero) {
        return Err(SecantError::BaseLocus);
    }
    Ok(())
}

/// `δ = n − rank II_v + 1`.
pub fn secant_deficiency(forms: &FundamentalForms, v: &[Scalar]) -> Result<usize, SecantError> {
    check_not_base_locus(forms, v)?;
    let rank = sff_v_map(forms, v)?.rank();
    Ok(forms.n() + 1 - rank)
}

/// `Ann(v) ⊆ N*`, the kernel of `II_vᵀ`.
pub fn ann(forms: &FundamentalForms, v: &[Scalar]) -> Result<Subspace, SecantError> {
    Ok(kernel(&sff_v_map(forms, v)?.transpose()))
}

/// Common singular locus of the quadrics of `A ⊆ N*`; all of `T` for `A = 0`.
pub fn singloc(forms: &FundamentalForms, system: &Subspace) -> Result<Subspace, SecantError> {
    let mut acc = Subspace::full(forms.n());
    for f in system.basis() {
        let q = quadric_of_covector(forms, f)?;
        acc = acc.intersect(&kernel(&q))?;
    }
    Ok(acc)
}

/// Fills a [`SecantReport`] for the given general vector.
pub fn key_identity_check(forms: &FundamentalForms, v: &[Scalar]) -> Result<SecantReport, SecantError> {
    let n = forms.n();
    let a = forms.a();
    let delta = secant_deficiency(forms, v)?;
    let ker_iiv = kernel(&sff_v_map(forms, v)?);
    let span_v_ker = Subspace::span(n, &[v.to_vec()])?.join(&ker_iiv)?;
    debug_assert_eq!(span_v_ker.dim(), delta);
    let ann = ann(forms, v)?;
    let singloc_ann = singloc(forms, &ann)?;
    if !span_v_ker.is_subspace_of(&singloc_ann) {
        return Err(SecantError::ContainmentBreach);
    }
    let landsberg_s = singloc_ann.dim() - span_v_ker.dim();
    let dim_z = n - delta;
    let dim_sec = 2 * n + 1 - delta;
    // dim Sec can exceed the ambient only for inputs outside the theory.
    let codim_sec = (n + a).saturating_sub(dim_sec);
    Ok(SecantReport {
        n,
        a,
        v: v.to_vec(),
        delta,
        dim_z,
        dim_sec,
        codim_sec,
        dim_ann: ann.dim(),
        ann,
        ker_iiv,
        key_identity_holds: singloc_ann == span_v_ker,
        span_v_ker,
        singloc_ann,
        landsberg_s,
        gauss_fibre_dim_z: landsberg_s,
        secant_fills: codim_sec == 0,
    })
}

/// Projective dimension of the closure of the tangential projection, from the
/// rank of its differential at a random parameter point `y`.
///
/// With `g(t) = Π·f(t)` (ambient point modulo the embedded tangent space),
/// `dim Z = rank [dg(y) | g(y)] − 1`.
pub fn tangential_projection_dim(chart: &Chart, forms: &FundamentalForms, rng: &mut SeededRng) -> Result<usize, SecantError> {
    let quotient = forms.quotient();
    for _ in 0..RESAMPLE_BUDGET {
        let y = small_int_vector(rng, chart.param_dim());
        let g = quotient.mul_vec(&chart.eval(&y))?;
        if g.iter().all(Scalar::is_zero) {
            continue;
        }
        let dg = quotient * &chart.jacobian_at(&y);
        let aug = dg.hstack(&Matrix::from_columns(g.len(), &[g])?)?;
        return Ok(aug.rank() - 1);
    }
    Err(SecantError::SampleOnTangentSpace {
        attempts: RESAMPLE_BUDGET,
    })
}
