use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactla::{coords_in_basis, LinAlgError, Matrix, Scalar, Subspace};
use crate::secantgeom::SecantReport;
use crate::sff::{sff_apply, sff_v_map, FundamentalForms};

use super::{minimal_module_dim, CliffordError};

/// The Clifford module on `W ≅ U`, a complement of `⟨v, ker II_v⟩` in `T`,
/// over `K = ker II_v`.
///
/// For `w ∈ K` and `u ∈ U`, `II(w, u)` lies in `II_v(T)`, which has basis
/// `{f0 = II(v, v)} ∪ {II_v(u_i)}`. The `II_v(u_i)` coefficients give the
/// column `C_w(u)`, and the `f0` coefficient of `II(w, w′)` gives `Q(w, w′)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordModuleData {
    pub k_basis: Vec<Vec<Scalar>>,
    pub u_basis: Vec<Vec<Scalar>>,
    pub f0: Vec<Scalar>,
    /// `C_w` for each vector of `k_basis`, in the basis `u_basis`.
    pub action: Vec<Matrix>,
    pub q: Matrix,
    pub v_used: Vec<Scalar>,
}

impl CliffordModuleData {
    /// `dim K`.
    pub fn form_dim(&self) -> usize {
        self.k_basis.len()
    }

    /// `dim W`.
    pub fn module_dim(&self) -> usize {
        self.u_basis.len()
    }

    /// `C_x` for `x = Σ coeffs_k·k_basis[k]`.
    pub fn action_of(&self, coeffs: &[Scalar]) -> Matrix {
        let d = self.module_dim();
        coeffs
            .iter()
            .zip(&self.action)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(d, d), |acc, (c, m)| &acc + &m.scale(c))
    }
}

/// Builds the module with the deterministic coordinate complement of `⟨v, K⟩`.
pub fn build_clifford_module(forms: &FundamentalForms, report: &SecantReport) -> Result<CliffordModuleData, CliffordError> {
    let u_basis = report.span_v_ker.complement().basis().to_vec();
    build_clifford_module_with_complement(forms, report, u_basis)
}

/// Builds the module on a caller-chosen complement `U` of `⟨v, K⟩`.
pub fn build_clifford_module_with_complement(
    forms: &FundamentalForms,
    report: &SecantReport,
    u_basis: Vec<Vec<Scalar>>,
) -> Result<CliffordModuleData, CliffordError> {
    if report.delta == 0 {
        return Err(CliffordError::DeltaZero);
    }
    if report.secant_fills {
        return Err(CliffordError::SecantFills);
    }
    if !report.key_identity_holds {
        return Err(CliffordError::NotLqel { s: report.landsberg_s });
    }
    let n = forms.n();
    let v = &report.v;
    let span_u = Subspace::span(n, &u_basis)?;
    if span_u.dim() != u_basis.len()
        || span_u.dim() + report.span_v_ker.dim() != n
        || !span_u.intersect(&report.span_v_ker)?.is_zero()
    {
        return Err(CliffordError::BadComplement);
    }

    let iiv = sff_v_map(forms, v)?;
    let f0 = sff_apply(forms, v, v)?;
    let mut image_basis = vec![f0.clone()];
    for u in &u_basis {
        image_basis.push(iiv.mul_vec(u)?);
    }
    // II_v restricted to ⟨v⟩ ⊕ U must be injective.
    if Subspace::span(forms.a(), &image_basis)?.dim() != image_basis.len() {
        return Err(CliffordError::DiagramExactnessBreach);
    }
    let decompose = |x: &[Scalar]| -> Result<Vec<Scalar>, CliffordError> {
        coords_in_basis(&image_basis, x).map_err(|e| match e {
            LinAlgError::NotInSpan => CliffordError::DiagramExactnessBreach,
            other => CliffordError::LinAlg(other),
        })
    };

    let k_basis = report.ker_iiv.basis().to_vec();
    let d = u_basis.len();
    let mut action = Vec::with_capacity(k_basis.len());
    for w in &k_basis {
        let mut c = Matrix::zeros(d, d);
        for (col, u) in u_basis.iter().enumerate() {
            let coeffs = decompose(&sff_apply(forms, w, u)?)?;
            for row in 0..d {
                c[(row, col)] = coeffs[row + 1].clone();
            }
        }
        action.push(c);
    }
    let l = k_basis.len();
    let mut q = Matrix::zeros(l, l);
    for a in 0..l {
        for b in a..l {
            let coeffs = decompose(&sff_apply(forms, &k_basis[a], &k_basis[b])?)?;
            q[(a, b)] = coeffs[0].clone();
            q[(b, a)] = coeffs[0].clone();
        }
    }
    Ok(CliffordModuleData {
        k_basis,
        u_basis,
        f0,
        action,
        q,
        v_used: v.clone(),
    })
}

/// One nonzero entry of `C_a C_b + C_b C_a + 2 Q(a, b)·Identity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub a: usize,
    pub b: usize,
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    /// Unordered basis pairs `a ≤ b` checked.
    pub pairs_checked: usize,
    pub residuals: Vec<RelationResidual>,
}

impl RelationReport {
    pub fn is_exact(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Checks `C_a C_b + C_b C_a = −2 Q(a, b)·Identity` on every basis pair.
pub fn verify_clifford_relations(d: &CliffordModuleData) -> RelationReport {
    let l = d.form_dim();
    let dim = d.module_dim();
    let mut residuals = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..l {
        for b in a..l {
            pairs_checked += 1;
            let (ca, cb) = (&d.action[a], &d.action[b]);
            let twice_q = Matrix::scalar_matrix(dim, &d.q[(a, b)] * &Scalar::from_int(2));
            let lhs = &(&(ca * cb) + &(cb * ca)) + &twice_q;
            residuals.extend(lhs.nonzero_positions().into_iter().map(|(row, col)| RelationResidual {
                a,
                b,
                row,
                col,
                value: lhs[(row, col)].clone(),
            }));
        }
    }
    RelationReport { pairs_checked, residuals }
}

/// Recovers `Q` from squares alone: `Q(w, w) = −C_w²` as a scalar, and
/// off-diagonal entries by polarization through `C_{w+w′} = C_w + C_{w′}`.
pub fn recover_q_from_squares(d: &CliffordModuleData) -> Result<Matrix, CliffordError> {
    let l = d.form_dim();
    let neg_square = |m: &Matrix, label: String| -> Result<Scalar, CliffordError> {
        (m * m).as_scalar().map(|c| -c).ok_or(CliffordError::SquareNotScalar { which: label })
    };
    let diag: Vec<Scalar> = (0..l)
        .map(|a| neg_square(&d.action[a], format!("C_{a}")))
        .collect::<Result<_, _>>()?;
    let half = Scalar::from_ratio(1, 2);
    let mut q = Matrix::zeros(l, l);
    for a in 0..l {
        q[(a, a)] = diag[a].clone();
        for b in a + 1..l {
            let sum = &d.action[a] + &d.action[b];
            let qs = neg_square(&sum, format!("C_{a} + C_{b}"))?;
            let x = &(&(&qs - &diag[a]) - &diag[b]) * &half;
            q[(a, b)] = x.clone();
            q[(b, a)] = x;
        }
    }
    Ok(q)
}

/// `det Q ≠ 0`; the empty form counts as nondegenerate.
pub fn q_nondegenerate(q: &Matrix) -> bool {
    q.determinant().map(|d| !d.is_zero()).unwrap_or(false)
}

/// How the odd-`l` module splits between the two inequivalent irreducibles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chirality {
    /// `l` even: a single irreducible module.
    NotApplicable,
    /// `r` copies where the volume element acts by `+σ`, `s` by `−σ`, with
    /// `σ` the square root of `ω²` chosen by [`Scalar::sqrt`].
    Split { r: usize, s: usize },
    /// The needed square root of `ω²` is not in Q(i).
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub l: usize,
    pub p: usize,
    pub m: usize,
    pub chirality: Chirality,
}

/// Rows are coefficient vectors of a `Q`-orthogonal basis of `K`.
pub fn q_orthogonal_basis(q: &Matrix) -> Matrix {
    let l = q.rows();
    let bil = |x: &[Scalar], y: &[Scalar]| q.bilinear(x, y).expect("square form");
    let mut pending: Vec<Vec<Scalar>> = Matrix::identity(l).row_vecs();
    let mut out = Vec::with_capacity(l);
    while !pending.is_empty() {
        let pick = pending.iter().position(|x| !bil(x, x).is_zero());
        let e = match pick {
            Some(k) => pending.remove(k),
            None => {
                let pair = (0..pending.len())
                    .flat_map(|a| (a + 1..pending.len()).map(move |b| (a, b)))
                    .find(|&(a, b)| !bil(&pending[a], &pending[b]).is_zero());
                match pair {
                    Some((a, b)) => {
                        let sum = pending[a].iter().zip(&pending[b]).map(|(x, y)| x + y).collect();
                        pending.remove(a);
                        sum
                    }
                    None => {
                        out.append(&mut pending);
                        break;
                    }
                }
            }
        };
        let qe = bil(&e, &e);
        for x in pending.iter_mut() {
            let c = &bil(x, &e) / &qe;
            for (xi, ei) in x.iter_mut().zip(&e) {
                *xi -= &(&c * ei);
            }
        }
        out.push(e);
    }
    Matrix::from_rows(l, &out).expect("l coefficient vectors")
}

/// `m = dim W / 2^⌊l/2⌋`, plus the chirality split for odd `l`.
pub fn module_multiplicity(d: &CliffordModuleData) -> Result<Multiplicity, CliffordError> {
    let l = d.form_dim();
    let p = minimal_module_dim(l);
    let dim_w = d.module_dim();
    if !dim_w.is_multiple_of(p) {
        return Err(CliffordError::DivisibilityBreach { p, dim_w });
    }
    let m = dim_w / p;
    let chirality = if l.is_multiple_of(2) {
        Chirality::NotApplicable
    } else {
        chirality_split(d, p, m)?
    };
    Ok(Multiplicity { l, p, m, chirality })
}

fn chirality_split(d: &CliffordModuleData, p: usize, m: usize) -> Result<Chirality, CliffordError> {
    let basis = q_orthogonal_basis(&d.q);
    let dim = d.module_dim();
    let omega = (0..basis.rows()).fold(Matrix::identity(dim), |acc, r| &acc * &d.action_of(basis.row(r)));
    let omega_sq = (&omega * &omega).as_scalar().ok_or(CliffordError::SquareNotScalar {
        which: "volume element".into(),
    })?;
    let trace = omega.trace();
    if trace.is_zero() {
        return Ok(if m.is_multiple_of(2) {
            Chirality::Split { r: m / 2, s: m / 2 }
        } else {
            Chirality::Unresolved
        });
    }
    let Some(sigma) = omega_sq.sqrt() else {
        return Ok(Chirality::Unresolved);
    };
    if sigma.is_zero() {
        return Ok(Chirality::Unresolved);
    }
    // trace ω = (r − s)·p·σ
    let diff = &trace / &(&sigma * &Scalar::from_int(p as i64));
    let Some(diff) = diff.is_real().then(|| diff.re().clone()).filter(|x| x.is_integer()) else {
        return Ok(Chirality::Unresolved);
    };
    let diff: i64 = diff.to_integer().try_into().map_err(|_| CliffordError::DivisibilityBreach { p, dim_w: dim })?;
    let m = m as i64;
    if diff.abs() > m || (m + diff) % 2 != 0 {
        return Ok(Chirality::Unresolved);
    }
    Ok(Chirality::Split {
        r: ((m + diff) / 2) as usize,
        s: ((m - diff) / 2) as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secantgeom::key_identity_check;
    use crate::sff::second_fundamental_form;
    use crate::varieties::{segre_chart, veronese_chart};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn segre22_module() -> CliffordModuleData {
        let forms = second_fundamental_form(&segre_chart(2, 2).unwrap()).unwrap();
        let report = key_identity_check(&forms, &ints(&[1, 0, 1, 0])).unwrap();
        build_clifford_module(&forms, &report).unwrap()
    }

    #[test]
    fn segre22_hand_example() {
        let d = segre22_module();
        assert_eq!(d.k_basis, vec![ints(&[1, 0, -1, 0])]);
        // U = {s₂-direction, t₂-direction}
        assert_eq!(d.u_basis, vec![ints(&[0, 1, 0, 0]), ints(&[0, 0, 0, 1])]);
        assert_eq!(d.f0, ints(&[2, 0, 0, 0]));
        assert_eq!(d.action, vec![Matrix::from_ints(&[&[-1, 0], &[0, 1]])]);
        assert_eq!(d.q, Matrix::from_ints(&[&[-1]]));

        let rel = verify_clifford_relations(&d);
        assert_eq!(rel.pairs_checked, 1);
        assert!(rel.is_exact());
        assert_eq!(recover_q_from_squares(&d).unwrap(), d.q);
        assert!(q_nondegenerate(&d.q));
        assert_eq!(d.q.determinant().unwrap(), Scalar::from_int(-1));

        let mult = module_multiplicity(&d).unwrap();
        assert_eq!((mult.l, mult.p, mult.m), (1, 1, 2));
        // ω = C_w = diag(−1, 1), ω² = 1, trace 0: one copy of each chirality.
        assert_eq!(mult.chirality, Chirality::Split { r: 1, s: 1 });
    }

    #[test]
    fn veronese_module_is_vacuous() {
        let forms = second_fundamental_form(&veronese_chart(3).unwrap()).unwrap();
        let report = key_identity_check(&forms, &ints(&[1, 2, -1])).unwrap();
        let d = build_clifford_module(&forms, &report).unwrap();
        assert_eq!((d.form_dim(), d.module_dim()), (0, 2));
        let rel = verify_clifford_relations(&d);
        assert_eq!(rel.pairs_checked, 0);
        assert!(rel.is_exact());
        assert_eq!(recover_q_from_squares(&d).unwrap(), Matrix::zeros(0, 0));
        assert!(q_nondegenerate(&d.q));
        let mult = module_multiplicity(&d).unwrap();
        assert_eq!((mult.l, mult.p, mult.m), (0, 1, 2));
        assert_eq!(mult.chirality, Chirality::NotApplicable);
    }

    #[test]
    fn rejects_hypothesis_breaches() {
        let forms = second_fundamental_form(&segre_chart(2, 2).unwrap()).unwrap();
        let mut report = key_identity_check(&forms, &ints(&[1, 0, 1, 0])).unwrap();
        report.key_identity_holds = false;
        report.landsberg_s = 1;
        assert_eq!(build_clifford_module(&forms, &report), Err(CliffordError::NotLqel { s: 1 }));
        report.secant_fills = true;
        assert_eq!(build_clifford_module(&forms, &report), Err(CliffordError::SecantFills));
        report.delta = 0;
        assert_eq!(build_clifford_module(&forms, &report), Err(CliffordError::DeltaZero));
    }

    #[test]
    fn bad_complement_rejected() {
        let forms = second_fundamental_form(&segre_chart(2, 2).unwrap()).unwrap();
        let report = key_identity_check(&forms, &ints(&[1, 0, 1, 0])).unwrap();
        let u = vec![ints(&[1, 0, 0, 0]), ints(&[0, 1, 0, 0])];
        assert_eq!(
            build_clifford_module_with_complement(&forms, &report, u),
            Err(CliffordError::BadComplement)
        );
    }

    #[test]
    fn residuals_are_reported() {
        let mut d = segre22_module();
        d.q = Matrix::from_ints(&[&[-2]]);
        let rel = verify_clifford_relations(&d);
        assert_eq!(rel.residuals.len(), 2);
        assert_eq!(rel.residuals[0].value, Scalar::from_int(-2));
    }

    #[test]
    fn square_not_scalar_detected() {
        let mut d = segre22_module();
        d.action[0] = Matrix::from_ints(&[&[1, 1], &[0, 2]]);
        assert!(matches!(recover_q_from_squares(&d), Err(CliffordError::SquareNotScalar { .. })));
    }

    #[test]
    fn orthogonal_basis_handles_isotropic_start() {
        let q = Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        let b = q_orthogonal_basis(&q);
        let g = &(&b * &q) * &b.transpose();
        assert!((0..3).all(|r| (0..3).all(|c| r == c || g[(r, c)].is_zero())));
        assert!(!b.determinant().unwrap().is_zero());
    }
}
