use num_traits::Zero;

use crate::exactla::{Matrix, Scalar, Subspace};
use crate::sampling::{rng_from_seed, small_int_vector, SeededRng, RESAMPLE_BUDGET};
use crate::secantgeom::secant_deficiency;
use crate::sff::{sample_general_vector, second_fundamental_form, FundamentalForms};

use super::{chart_for_id, secant_fills, CatalogId, Chart, KnownInvariants, VarietyError};

/// The `(N−1) × N` projection with kernel `span{center}`: coordinate `j` (the
/// first nonzero entry of `center`) is eliminated, `x ↦ x_{≠j} − (x_j/c_j)·c_{≠j}`.
pub fn projection_matrix(center: &[Scalar]) -> Option<Matrix> {
    let dim = center.len();
    let j = center.iter().position(|x| !x.is_zero())?;
    let mut m = Matrix::zeros(dim - 1, dim);
    let inv = center[j].inv().expect("nonzero pivot");
    for (r, c) in (0..dim).filter(|&c| c != j).enumerate() {
        m[(r, c)] = Scalar::from_int(1);
        m[(r, j)] = -(&center[c] * &inv);
    }
    Some(m)
}

fn delta_at_base(forms: &FundamentalForms, rng: &mut SeededRng) -> Result<usize, VarietyError> {
    let gv = sample_general_vector(forms, rng).map_err(|e| VarietyError::ProjectionDegenerate(e.to_string()))?;
    secant_deficiency(forms, &gv.v).map_err(|e| VarietyError::ProjectionDegenerate(e.to_string()))
}

/// Projects the chart from the point at infinity `[0 : center]`, which keeps
/// the chart polynomial and centered.
///
/// The center must avoid the embedded tangent space at the base point. The
/// result is validated after the fact: the projected chart must still be an
/// immersion with the same secant deficiency, otherwise the center met the
/// secant variety and [`VarietyError::ProjectionDegenerate`] is returned.
pub fn project_chart(chart: &Chart, center: &[Scalar], rng: &mut SeededRng) -> Result<Chart, VarietyError> {
    let forms = second_fundamental_form(chart).map_err(|e| VarietyError::ProjectionDegenerate(e.to_string()))?;
    if center.len() != chart.ambient_dim() {
        return Err(VarietyError::ProjectionDegenerate(format!(
            "center has {} coordinates, chart has {}",
            center.len(),
            chart.ambient_dim()
        )));
    }
    let tangent = Subspace::span(chart.ambient_dim(), forms.tangent_basis()).expect("tangent vectors fit");
    if tangent.contains(center) {
        return Err(VarietyError::CenterInTangentSpace);
    }
    let source_delta = match chart.known() {
        Some(k) => k.delta,
        None => delta_at_base(&forms, rng)?,
    };

    let m = projection_matrix(center).expect("center outside the tangent space is nonzero");
    let projected = chart.map_linear(&m, chart.label());
    let new_forms = second_fundamental_form(&projected).map_err(|e| VarietyError::ProjectionDegenerate(e.to_string()))?;
    let delta = delta_at_base(&new_forms, rng)?;
    if delta != source_delta {
        return Err(VarietyError::ProjectionDegenerate(format!(
            "secant deficiency changed from {source_delta} to {delta}"
        )));
    }
    let n = projected.param_dim();
    let ambient = projected.ambient_dim();
    Ok(projected.with_known(KnownInvariants {
        delta,
        secant_fills: secant_fills(n, delta, ambient),
    }))
}

/// The chart behind `projected:<source>:<seed>:<count>`: `count` successive
/// projections, each after re-centering at a random small-integer parameter
/// point, all randomness drawn from `seed`.
pub fn projected_chart(source: &CatalogId, seed: u64, count: usize) -> Result<Chart, VarietyError> {
    let mut chart = chart_for_id(source)?;
    let mut rng = rng_from_seed(seed);
    for _ in 0..count {
        let mut next = None;
        let mut last_err = None;
        for _ in 0..RESAMPLE_BUDGET {
            let p = small_int_vector(&mut rng, chart.param_dim());
            let recentered = chart.recenter(&p);
            let center = small_int_vector(&mut rng, chart.ambient_dim());
            match project_chart(&recentered, &center, &mut rng) {
                Ok(c) => {
                    next = Some(c);
                    break;
                }
                Err(e @ (VarietyError::CenterInTangentSpace | VarietyError::ProjectionDegenerate(_))) => {
                    last_err = Some(e);
                }
                Err(e) => return Err(e),
            }
        }
        chart = next.ok_or_else(|| last_err.expect("at least one attempt"))?;
    }
    let known = chart.known();
    let label = CatalogId::Projected {
        source: Box::new(source.clone()),
        seed,
        count,
    }
    .to_string();
    let relabeled = Chart::new(label, chart.param_dim(), chart.coordinates().to_vec())?;
    Ok(match known {
        Some(k) => relabeled.with_known(k),
        None => relabeled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::veronese_chart;

    #[test]
    fn projection_kernel_is_center() {
        let c: Vec<Scalar> = [0, 2, -1, 3].map(Scalar::from_int).to_vec();
        let m = projection_matrix(&c).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 4));
        assert!(m.mul_vec(&c).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(m.rank(), 3);
        assert!(projection_matrix(&[Scalar::zero(), Scalar::zero()]).is_none());
    }

    #[test]
    fn center_in_tangent_space_rejected() {
        let chart = veronese_chart(3).unwrap();
        // J·(1, 2, 0) = (1, 2, 0, 0, ...): a tangent direction.
        let mut center = vec![Scalar::zero(); chart.ambient_dim()];
        center[0] = Scalar::from_int(1);
        center[1] = Scalar::from_int(2);
        let err = project_chart(&chart, &center, &mut rng_from_seed(0)).unwrap_err();
        assert_eq!(err, VarietyError::CenterInTangentSpace);
    }

    #[test]
    fn veronese3_projected_keeps_delta() {
        let id = CatalogId::Projected {
            source: Box::new(CatalogId::Veronese(3)),
            seed: 1,
            count: 1,
        };
        let c = chart_for_id(&id).unwrap();
        assert_eq!((c.param_dim(), c.ambient_dim()), (3, 8));
        assert_eq!(c.known().unwrap().delta, 1);
        assert!(!c.known().unwrap().secant_fills);
        assert_eq!(c.label(), "projected:veronese:3:1:1");
    }

    #[test]
    fn veronese2_projection_fills() {
        let c = projected_chart(&CatalogId::Veronese(2), 5, 1).unwrap();
        assert_eq!(c.ambient_dim(), 4);
        assert_eq!(c.known().unwrap().delta, 1);
        assert!(c.known().unwrap().secant_fills);
    }

    #[test]
    fn filling_source_cannot_be_projected() {
        // Sec(P¹×P²) = P⁵: every center meets it and δ must jump.
        let err = projected_chart(&CatalogId::Segre(1, 2), 3, 1).unwrap_err();
        assert!(matches!(err, VarietyError::ProjectionDegenerate(_)), "{err:?}");
    }
}
