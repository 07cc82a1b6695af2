use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LinAlgError, Matrix, Scalar};

/// A linear subspace of `Q(i)^ambient_dim`.
///
/// The basis is always the nonzero rows of a reduced row echelon form, so two
/// equal subspaces have identical representations and `==` is subspace
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(ambient_dim, &Matrix::identity(ambient_dim).row_vecs()).expect("identity rows fit")
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinAlgError> {
        let m = Matrix::from_rows(ambient_dim, vectors)?;
        let ech = m.echelon();
        let basis = (0..ech.pivots.len()).map(|r| ech.reduced.row(r).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient_dim, &self.basis).expect("basis rows fit")
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // Reduce v against the echelon basis.
        let mut r = v.to_vec();
        for (b, p) in self.basis.iter().zip(self.pivots()) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &(&c * y);
            }
        }
        r.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// Sum `A + B`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let vecs: Vec<Vec<Scalar>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient_dim, &vecs)
    }

    /// Vectors annihilated by every element of `self` under the bilinear
    /// pairing `Σ x_k y_k` (no conjugation).
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis_matrix())
    }

    /// Largest subspace contained in both.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let equations = self.annihilator().basis_matrix().vstack(&other.annihilator().basis_matrix())?;
        Ok(kernel(&equations))
    }

    /// Coordinate complement: the standard basis vectors at the non-pivot
    /// columns of the echelon basis.
    pub fn complement(&self) -> Subspace {
        let pivots = self.pivots();
        let vecs: Vec<Vec<Scalar>> = (0..self.ambient_dim)
            .filter(|c| !pivots.contains(c))
            .map(|c| unit_vector(self.ambient_dim, c))
            .collect();
        Subspace::span(self.ambient_dim, &vecs).expect("unit vectors fit")
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

pub fn unit_vector(dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = Scalar::one();
    v
}

/// Full nullspace of `m`, as a canonical subspace of `Q(i)^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let ech = m.echelon();
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let vecs: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = -&ech.reduced[(r, f)];
            }
            v
        })
        .collect();
    Subspace::span(cols, &vecs).expect("kernel vectors fit")
}

/// Unique coefficients `c` with `Σ c_k·vecs[k] = target`.
///
/// `vecs` must be linearly independent; a target outside their span is
/// reported as [`LinAlgError::NotInSpan`].
pub fn coords_in_basis(vecs: &[Vec<Scalar>], target: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
    let dim = target.len();
    let a = Matrix::from_columns(dim, vecs)?;
    let b = Matrix::from_columns(dim, &[target.to_vec()])?;
    let ech = a.hstack(&b)?.echelon();
    let k = vecs.len();
    if ech.pivots.contains(&k) {
        return Err(LinAlgError::NotInSpan);
    }
    if ech.pivots.len() != k {
        return Err(LinAlgError::Dependent);
    }
    Ok((0..k).map(|r| ech.reduced[(r, k)].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            // Small range so rank deficiency happens often.
            prop::collection::vec(-2i64..=2, r * c).prop_map(move |xs| {
                Matrix::from_entries(r, c, xs.into_iter().map(Scalar::from_int).collect()).unwrap()
            })
        })
    }

    fn arb_subspace(dim: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 0..=dim)
            .prop_map(move |rows| Subspace::span(dim, &rows.iter().map(|r| ints(r)).collect::<Vec<_>>()).unwrap())
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert!(kernel(&Matrix::identity(2)).is_zero());
    }

    #[test]
    fn kernel_of_projector() {
        let k = kernel(&Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(k, Subspace::span(2, &[ints(&[0, 1])]).unwrap());
    }

    #[test]
    fn kernel_over_gaussian_rationals() {
        // Row 2 is i·row 1; x + i·y = 0 gives (-i, 1) = -i·(1, i).
        let i = Scalar::i();
        let m = Matrix::from_rows(2, &[vec![Scalar::one(), i.clone()], vec![i.clone(), Scalar::from_int(-1)]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        let expected = Subspace::span(2, &[vec![Scalar::one(), i.clone()]]).unwrap();
        assert_eq!(k, expected);
        assert!(m.mul_vec(&[Scalar::one(), i]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(2, &[ints(&[1, 0])]).unwrap();
        let b = Subspace::span(2, &[ints(&[0, 1])]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.intersect(&a).unwrap(), a);

        let a = Subspace::span(3, &[ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(3, &[ints(&[0, 1, 0])]).unwrap());
    }

    #[test]
    fn intersect_rejects_mismatched_ambients() {
        assert!(Subspace::zero(2).intersect(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn complement_examples() {
        assert!(Subspace::full(3).complement().is_zero());
        assert_eq!(Subspace::zero(3).complement(), Subspace::full(3));
        let a = Subspace::span(3, &[ints(&[1, 1, 0])]).unwrap();
        let c = a.complement();
        assert_eq!(c, Subspace::span(3, &[ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap());
        assert_eq!(a.join(&c).unwrap().dim(), 3);
    }

    #[test]
    fn coords_examples() {
        let e = |v: &[i64]| ints(v);
        assert_eq!(
            coords_in_basis(&[e(&[1, 0]), e(&[0, 1])], &e(&[1, 2])).unwrap(),
            e(&[1, 2])
        );
        assert_eq!(coords_in_basis(&[e(&[1, 0])], &e(&[0, 1])), Err(LinAlgError::NotInSpan));
        assert_eq!(
            coords_in_basis(&[e(&[1, 1]), e(&[1, -1])], &e(&[3, 1])).unwrap(),
            e(&[2, 1])
        );
    }

    /// Brute-force intersection oracle: solve `A·α = B·β` and map the
    /// solutions through `A`.
    fn intersect_oracle(a: &Subspace, b: &Subspace) -> Subspace {
        let am = a.basis_matrix().transpose();
        let bm = b.basis_matrix().transpose().scale(&Scalar::from_int(-1));
        let sys = am.hstack(&bm).unwrap();
        let sols = kernel(&sys);
        let vecs: Vec<Vec<Scalar>> = sols
            .basis()
            .iter()
            .map(|s| am.mul_vec(&s[..a.dim()]).unwrap())
            .collect();
        Subspace::span(a.ambient_dim(), &vecs).unwrap()
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(5, 6)) {
            let k = kernel(&m);
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for b in k.basis() {
                prop_assert!(m.mul_vec(b).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn intersect_lattice_laws(a in arb_subspace(4), b in arb_subspace(4), c in arb_subspace(4)) {
            let ab = a.intersect(&b).unwrap();
            prop_assert_eq!(&ab, &b.intersect(&a).unwrap());
            prop_assert_eq!(ab.intersect(&c).unwrap(), a.intersect(&b.intersect(&c).unwrap()).unwrap());
            prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
            prop_assert_eq!(ab, intersect_oracle(&a, &b));
        }

        #[test]
        fn complement_is_direct(a in arb_subspace(5)) {
            let c = a.complement();
            prop_assert_eq!(a.dim() + c.dim(), 5);
            prop_assert!(a.intersect(&c).unwrap().is_zero());
        }

        #[test]
        fn coords_recombine(coeffs in prop::collection::vec(-5i64..=5, 3)) {
            let basis = vec![ints(&[1, 2, 0, 1]), ints(&[0, 1, 1, 0]), ints(&[1, 0, 0, 3])];
            let target: Vec<Scalar> = (0..4)
                .map(|k| basis.iter().zip(&coeffs).map(|(b, &c)| &b[k] * &Scalar::from_int(c)).sum())
                .collect();
            let got = coords_in_basis(&basis, &target).unwrap();
            let back: Vec<Scalar> = (0..4)
                .map(|k| basis.iter().zip(&got).map(|(b, c)| &b[k] * c).sum())
                .collect();
            prop_assert_eq!(back, target);
        }
    }
}
