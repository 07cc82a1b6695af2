//! Second fundamental form at the base point of a chart.
//!
//! Tangent vectors are written in parameter coordinates: the tangent vector
//! with coordinates `v` is `J·v`, where `J` is the Jacobian at the origin. The
//! normal space `N = C^{n+a} / T` is identified with the coordinates that are
//! not tangent pivots (for a graph chart, the last `a` coordinates), through
//! the quotient map `x ↦ x_rest − J_rest·J_piv⁻¹·x_piv`.
//!
//! The projective point direction never appears: in the affine chart
//! `[1 : f(t)]` it is the homogenizing coordinate and is folded away.

use num_traits::Zero;

use crate::exactla::{dot, kernel, LinAlgError, Matrix, Scalar};
use crate::sampling::{small_int_vector, SeededRng, RESAMPLE_BUDGET};
use crate::varieties::Chart;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SffError {
    #[error("chart is not an immersion at the base point: Jacobian rank {rank} < {n}")]
    NotImmersion { rank: usize, n: usize },
    #[error("no general tangent vector found after {attempts} attempts (rank certificates disagree or II(v,v) = 0)")]
    SamplingBudget { attempts: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// `T`, `N` and `II: S²T → N` at the base point.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalForms {
    n: usize,
    a: usize,
    tangent_basis: Vec<Vec<Scalar>>,
    tangent_pivots: Vec<usize>,
    normal_labels: Vec<usize>,
    quotient: Matrix,
    hessians: Vec<Matrix>,
}

impl FundamentalForms {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    /// The columns of the Jacobian: ambient vectors spanning `T`.
    pub fn tangent_basis(&self) -> &[Vec<Scalar>] {
        &self.tangent_basis
    }

    /// Ambient coordinates used as the basis of `N`.
    pub fn normal_labels(&self) -> &[usize] {
        &self.normal_labels
    }

    /// Ambient coordinates where the Jacobian is invertible.
    pub fn tangent_pivots(&self) -> &[usize] {
        &self.tangent_pivots
    }

    /// The `a × (n + a)` quotient map `C^{n+a} → N`.
    pub fn quotient(&self) -> &Matrix {
        &self.quotient
    }

    /// One symmetric `n × n` matrix per normal coordinate.
    pub fn hessians(&self) -> &[Matrix] {
        &self.hessians
    }

    pub fn project_to_normal(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        self.quotient.mul_vec(x)
    }

    fn check_tangent(&self, v: &[Scalar]) -> Result<(), LinAlgError> {
        if v.len() != self.n {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// Computes `T`, `N` and the hessian components of `II` at the chart origin.
pub fn second_fundamental_form(chart: &Chart) -> Result<FundamentalForms, SffError> {
    let n = chart.param_dim();
    let ambient = chart.ambient_dim();
    let jac = chart.jacobian_at(&chart.origin());
    // Greedy independent rows of J are the pivot columns of Jᵀ.
    let pivots = jac.transpose().echelon().pivots;
    if pivots.len() < n {
        return Err(SffError::NotImmersion { rank: pivots.len(), n });
    }
    let rest: Vec<usize> = (0..ambient).filter(|r| !pivots.contains(r)).collect();
    let a = rest.len();

    let j_piv_inv = jac.select_rows(&pivots).inverse()?;
    let correction = &jac.select_rows(&rest) * &j_piv_inv;
    let mut quotient = Matrix::zeros(a, ambient);
    for (k, &r) in rest.iter().enumerate() {
        quotient[(k, r)] = Scalar::from_int(1);
        for (c, &p) in pivots.iter().enumerate() {
            quotient[(k, p)] = -&correction[(k, c)];
        }
    }

    let second = chart.second_derivatives_at_origin();
    let mut hessians = vec![Matrix::zeros(n, n); a];
    for i in 0..n {
        for j in 0..n {
            let normal = quotient.mul_vec(&second[i][j])?;
            for (k, x) in normal.into_iter().enumerate() {
                hessians[k][(i, j)] = x;
            }
        }
    }

    Ok(FundamentalForms {
        n,
        a,
        tangent_basis: (0..n).map(|c| jac.column(c)).collect(),
        tangent_pivots: pivots,
        normal_labels: rest,
        quotient,
        hessians,
    })
}

/// `II(v, w)` in normal coordinates.
pub fn sff_apply(forms: &FundamentalForms, v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
    forms.check_tangent(v)?;
    forms.check_tangent(w)?;
    forms.hessians.iter().map(|h| h.bilinear(v, w)).collect()
}

/// The `a × n` matrix of `II_v: w ↦ II(v, w)`.
pub fn sff_v_map(forms: &FundamentalForms, v: &[Scalar]) -> Result<Matrix, LinAlgError> {
    forms.check_tangent(v)?;
    let rows: Vec<Vec<Scalar>> = forms
        .hessians
        .iter()
        .map(|h| h.transpose().mul_vec(v))
        .collect::<Result<_, _>>()?;
    Matrix::from_rows(forms.n, &rows)
}

/// The quadric `Σ f_k·H_k` of a normal covector.
pub fn quadric_of_covector(forms: &FundamentalForms, f: &[Scalar]) -> Result<Matrix, LinAlgError> {
    if f.len() != forms.a {
        return Err(LinAlgError::DimensionMismatch {
            expected: forms.a,
            found: f.len(),
        });
    }
    let mut q = Matrix::zeros(forms.n, forms.n);
    for (c, h) in f.iter().zip(&forms.hessians) {
        if !c.is_zero() {
            q = &q + &h.scale(c);
        }
    }
    Ok(q)
}

/// A sampled tangent vector with its genericity certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralVector {
    pub v: Vec<Scalar>,
    /// `rank II_v`, equal across the independent samples drawn with `v`.
    pub rank: usize,
    pub attempts: usize,
}

/// Number of independent samples whose `rank II_v` must agree.
pub const RANK_CERTIFICATE_SAMPLES: usize = 3;

/// Draws a general tangent vector: integer coordinates in `[-10, 10]`, with
/// `rank II_v` agreeing across [`RANK_CERTIFICATE_SAMPLES`] draws and
/// `II(v, v) ≠ 0`.
pub fn sample_general_vector(forms: &FundamentalForms, rng: &mut SeededRng) -> Result<GeneralVector, SffError> {
    for attempt in 1..=RESAMPLE_BUDGET {
        let candidates: Vec<Vec<Scalar>> = (0..RANK_CERTIFICATE_SAMPLES).map(|_| small_int_vector(rng, forms.n)).collect();
        let ranks: Vec<usize> = candidates
            .iter()
            .map(|v| sff_v_map(forms, v).map(|m| m.rank()))
            .collect::<Result<_, _>>()?;
        if ranks.iter().any(|&r| r != ranks[0]) {
            continue;
        }
        let v = candidates.into_iter().next().expect("at least one candidate");
        let vv = sff_apply(forms, &v, &v)?;
        if vv.iter().all(Scalar::is_zero) {
            continue;
        }
        return Ok(GeneralVector {
            v,
            rank: ranks[0],
            attempts: attempt,
        });
    }
    Err(SffError::SamplingBudget {
        attempts: RESAMPLE_BUDGET,
    })
}

/// `fᵀ·II(v, w)`, the pairing of a normal covector with a normal vector.
pub fn pair(f: &[Scalar], x: &[Scalar]) -> Scalar {
    dot(f, x)
}

/// `ker II_v`, for callers that only need the subspace.
pub fn kernel_of_sff_v(forms: &FundamentalForms, v: &[Scalar]) -> Result<crate::exactla::Subspace, LinAlgError> {
    Ok(kernel(&sff_v_map(forms, v)?))
}
