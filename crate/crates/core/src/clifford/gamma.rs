use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactla::{Matrix, Scalar};

/// `l` anticommuting `p × p` matrices squaring to `−Identity`, `p = 2^⌊l/2⌋`:
/// an irreducible module of the complex Clifford algebra of a nondegenerate
/// `l`-dimensional form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRep {
    pub l: usize,
    pub p: usize,
    pub gammas: Vec<Matrix>,
}

/// `2^⌊l/2⌋`, the dimension of every irreducible module.
pub fn minimal_module_dim(l: usize) -> usize {
    1 << (l / 2)
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for (ar, ac) in (0..a.rows()).flat_map(|r| (0..a.cols()).map(move |c| (r, c))) {
        let x = &a[(ar, ac)];
        if x.is_zero() {
            continue;
        }
        for (br, bc) in (0..b.rows()).flat_map(|r| (0..b.cols()).map(move |c| (r, c))) {
            out[(ar * b.rows() + br, ac * b.cols() + bc)] = x * &b[(br, bc)];
        }
    }
    out
}

fn pauli() -> [Matrix; 3] {
    let z = Scalar::zero;
    let o = Scalar::one;
    let i = Scalar::i;
    let s1 = Matrix::from_rows(2, &[vec![z(), o()], vec![o(), z()]]).expect("2x2");
    let s2 = Matrix::from_rows(2, &[vec![z(), -i()], vec![i(), z()]]).expect("2x2");
    let s3 = Matrix::from_rows(2, &[vec![o(), z()], vec![z(), -o()]]).expect("2x2");
    [s1, s2, s3]
}

fn kron_all(factors: &[Matrix]) -> Matrix {
    factors.iter().fold(Matrix::identity(1), |acc, f| kron(&acc, f))
}

/// Tensor-product construction. With `k = ⌊l/2⌋`, the Hermitian generators
/// are `σ₃^{⊗(j−1)} ⊗ σ₂ ⊗ 1^{⊗(k−j)}` and `σ₃^{⊗(j−1)} ⊗ σ₁ ⊗ 1^{⊗(k−j)}`
/// for `j = 1..k`, plus `σ₃^{⊗k}` when `l` is odd; each is multiplied by `i`.
pub fn gamma_construction(l: usize) -> GammaRep {
    let k = l / 2;
    let [s1, s2, s3] = pauli();
    let id2 = Matrix::identity(2);
    let i = Scalar::i();
    let mut gammas = Vec::with_capacity(l);
    for j in 0..k {
        for s in [&s2, &s1] {
            let mut factors = vec![s3.clone(); j];
            factors.push(s.clone());
            factors.extend(std::iter::repeat_n(id2.clone(), k - j - 1));
            gammas.push(kron_all(&factors).scale(&i));
        }
    }
    if l % 2 == 1 {
        gammas.push(kron_all(&vec![s3.clone(); k]).scale(&i));
    }
    GammaRep {
        l,
        p: minimal_module_dim(l),
        gammas,
    }
}

/// `γ_a γ_b + γ_b γ_a = −2 δ_ab · Identity` for all pairs.
pub fn gamma_relations_hold(rep: &GammaRep) -> bool {
    let id = Matrix::identity(rep.p);
    rep.gammas.len() == rep.l
        && rep.gammas.iter().all(|g| g.rows() == rep.p && g.cols() == rep.p)
        && (0..rep.l).all(|a| {
            (a..rep.l).all(|b| {
                let (ga, gb) = (&rep.gammas[a], &rep.gammas[b]);
                let anti = &(ga * gb) + &(gb * ga);
                let expected = if a == b { id.scale(&Scalar::from_int(-2)) } else { Matrix::zeros(rep.p, rep.p) };
                anti == expected
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let g0 = gamma_construction(0);
        assert_eq!((g0.p, g0.gammas.len()), (1, 0));

        let g2 = gamma_construction(2);
        assert_eq!(g2.p, 2);
        let z = Scalar::zero;
        let i = Scalar::i;
        assert_eq!(g2.gammas[0], Matrix::from_ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(g2.gammas[1], Matrix::from_rows(2, &[vec![z(), i()], vec![i(), z()]]).unwrap());
        assert_eq!(gamma_construction(7).p, 8);
    }

    #[test]
    fn minimal_dims() {
        assert_eq!(minimal_module_dim(0), 1);
        assert_eq!(minimal_module_dim(3), 2);
        assert_eq!(minimal_module_dim(7), 8);
    }

    #[test]
    fn relations_through_l9() {
        for l in 0..=9 {
            let rep = gamma_construction(l);
            assert_eq!(rep.p, minimal_module_dim(l));
            assert!(gamma_relations_hold(&rep), "l = {l}");
        }
    }

    #[test]
    fn broken_rep_detected() {
        let mut rep = gamma_construction(3);
        rep.gammas[2] = rep.gammas[1].clone();
        assert!(!gamma_relations_hold(&rep));
    }
}
