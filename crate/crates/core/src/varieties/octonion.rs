use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exactla::Scalar;

/// Oriented Fano-plane lines: `e_a·e_b = e_c` cyclically along each triple.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// Product of basis units: `e_a·e_b = sign·e_c`.
pub fn basis_product(a: usize, b: usize) -> (i64, usize) {
    assert!(a < 8 && b < 8, "octonion basis index out of range");
    match (a, b) {
        (0, b) => (1, b),
        (a, 0) => (1, a),
        (a, b) if a == b => (-1, 0),
        _ => {
            for t in FANO_TRIPLES {
                for r in 0..3 {
                    let (x, y, z) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                    if (x, y) == (a, b) {
                        return (1, z);
                    }
                    if (y, x) == (a, b) {
                        return (-1, z);
                    }
                }
            }
            unreachable!("every pair of imaginary units lies on one Fano line")
        }
    }
}

/// Bilinear product over any coefficient ring, through the unit table.
pub(crate) fn product_by_table<T, F>(x: &[T; 8], y: &[T; 8], zero: T, mul_signed: F) -> [T; 8]
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T>,
    F: Fn(&T, &T, i64) -> T,
{
    let mut out: [T; 8] = std::array::from_fn(|_| zero.clone());
    for a in 0..8 {
        for b in 0..8 {
            let (sign, c) = basis_product(a, b);
            out[c] = &out[c] + &mul_signed(&x[a], &y[b], sign);
        }
    }
    out
}

/// An octonion over Q(i), in the basis `1 = e0, e1, ..., e7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Octonion {
    pub coeffs: [Scalar; 8],
}

impl Octonion {
    pub fn new(coeffs: [Scalar; 8]) -> Self {
        Octonion { coeffs }
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion::new(c.map(Scalar::from_int))
    }

    pub fn zero() -> Self {
        Octonion::new(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn one() -> Self {
        Octonion::unit(0)
    }

    pub fn unit(k: usize) -> Self {
        let mut o = Octonion::zero();
        o.coeffs[k] = Scalar::from_int(1);
        o
    }

    pub fn conj(&self) -> Self {
        let mut c = self.coeffs.clone();
        for x in c.iter_mut().skip(1) {
            *x = -&*x;
        }
        Octonion::new(c)
    }

    /// The quadratic norm `Σ coeffs²`.
    pub fn norm(&self) -> Scalar {
        self.coeffs.iter().map(|x| x * x).sum()
    }
}

impl Mul<&Octonion> for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        Octonion::new(product_by_table(&self.coeffs, &rhs.coeffs, Scalar::zero(), |a, b, s| {
            a * b * Scalar::from_int(s)
        }))
    }
}

impl Add<&Octonion> for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]))
    }
}

impl Sub<&Octonion> for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]))
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion::new(std::array::from_fn(|k| -&self.coeffs[k]))
    }
}

/// `x·y`, the free-standing form of the multiplication operator.
pub fn octonion_mul(x: &Octonion, y: &Octonion) -> Octonion {
    x * y
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_octonion() -> impl Strategy<Value = Octonion> {
        prop::array::uniform8(-9i64..=9).prop_map(Octonion::from_ints)
    }

    #[test]
    fn unit_table() {
        let e = Octonion::unit;
        let x = Octonion::from_ints([3, -1, 4, 1, -5, 9, 2, -6]);
        assert_eq!(octonion_mul(&Octonion::one(), &x), x);
        assert_eq!(octonion_mul(&e(1), &e(1)), -&Octonion::one());
        assert_eq!(octonion_mul(&e(1), &e(2)), e(3));
        assert_eq!(octonion_mul(&e(2), &e(1)), -&e(3));
        assert_eq!(octonion_mul(&e(1), &e(7)), e(6));
        assert_eq!(octonion_mul(&e(6), &e(5)), e(3));
    }

    #[test]
    fn imaginary_units_anticommute() {
        for a in 1..8 {
            for b in 1..8 {
                if a != b {
                    let (s1, c1) = basis_product(a, b);
                    let (s2, c2) = basis_product(b, a);
                    assert_eq!((c1, s1), (c2, -s2));
                }
            }
        }
    }

    #[test]
    fn not_associative() {
        let e = Octonion::unit;
        let left = &(&e(1) * &e(2)) * &e(4);
        let right = &e(1) * &(&e(2) * &e(4));
        assert_eq!(left, -&right);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn norm_composes(x in arb_octonion(), y in arb_octonion()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn alternative_laws(x in arb_octonion(), y in arb_octonion()) {
            prop_assert_eq!(&(&x * &x) * &y, &x * &(&x * &y));
            prop_assert_eq!(&x * &(&y * &y), &(&x * &y) * &y);
        }

        #[test]
        fn conjugate_multiplies_to_norm(x in arb_octonion()) {
            let n = &x * &x.conj();
            let mut expected = Octonion::zero();
            expected.coeffs[0] = x.norm();
            prop_assert_eq!(n, expected);
        }
    }
}
