use num_traits::Zero;

use crate::exactla::{Matrix, Scalar};
use crate::poly::{parse_poly, Poly};

use super::VarietyError;

/// Invariants a catalog construction knows in advance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownInvariants {
    pub delta: usize,
    pub secant_fills: bool,
}

/// A polynomial local parametrization `t ↦ [1 : f(t)]` of an `n`-dimensional
/// variety in `P^{n+a}`, centered at the base point `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    label: String,
    param_dim: usize,
    coordinates: Vec<Poly>,
    known: Option<KnownInvariants>,
}

impl Chart {
    pub fn new(label: impl Into<String>, param_dim: usize, coordinates: Vec<Poly>) -> Result<Self, VarietyError> {
        let label = label.into();
        for (k, p) in coordinates.iter().enumerate() {
            if p.nvars() != param_dim {
                return Err(VarietyError::Arity {
                    coordinate: k,
                    expected: param_dim,
                    found: p.nvars(),
                });
            }
            if !p.constant_term().is_zero() {
                return Err(VarietyError::NotCentered { coordinate: k });
            }
        }
        Ok(Chart {
            label,
            param_dim,
            coordinates,
            known: None,
        })
    }

    pub fn with_known(mut self, known: KnownInvariants) -> Self {
        self.known = Some(known);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `n`.
    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    /// `n + a`.
    pub fn ambient_dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Poly] {
        &self.coordinates
    }

    pub fn known(&self) -> Option<KnownInvariants> {
        self.known
    }

    pub fn max_degree(&self) -> u32 {
        self.coordinates.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn origin(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.param_dim]
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.coordinates.iter().map(|p| p.eval(point)).collect()
    }

    /// The `(n + a) × n` Jacobian at a parameter point.
    pub fn jacobian_at(&self, point: &[Scalar]) -> Matrix {
        let n = self.param_dim;
        let mut j = Matrix::zeros(self.ambient_dim(), n);
        for (r, p) in self.coordinates.iter().enumerate() {
            for c in 0..n {
                j[(r, c)] = p.derivative(c).eval(point);
            }
        }
        j
    }

    /// `∂²f/∂t_i∂t_j` at the origin, as one ambient vector per `(i, j)`.
    /// Entry `[i][j]` of the result.
    pub fn second_derivatives_at_origin(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.param_dim;
        let origin = self.origin();
        let firsts: Vec<Vec<Poly>> = self
            .coordinates
            .iter()
            .map(|p| (0..n).map(|i| p.derivative(i)).collect())
            .collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| firsts.iter().map(|d| d[i].derivative(j).eval(&origin)).collect())
                    .collect()
            })
            .collect()
    }

    /// Moves the base point to the parameter point `p`: `f'(t) = f(t + p) − f(p)`.
    pub fn recenter(&self, p: &[Scalar]) -> Chart {
        let n = self.param_dim;
        let shifted: Vec<Poly> = (0..n)
            .map(|k| &Poly::var(n, k) + &Poly::constant(n, p[k].clone()))
            .collect();
        let coordinates = self
            .coordinates
            .iter()
            .map(|f| {
                let g = f.compose(&shifted);
                &g - &Poly::constant(n, g.constant_term())
            })
            .collect();
        Chart {
            label: self.label.clone(),
            param_dim: n,
            coordinates,
            known: self.known,
        }
    }

    /// Precomposes with the linear change of parameters `t = A·s`.
    pub fn precompose_linear(&self, a: &Matrix) -> Chart {
        let n = self.param_dim;
        assert_eq!((a.rows(), a.cols()), (n, n), "reparametrization must be n×n");
        let subs: Vec<Poly> = (0..n)
            .map(|r| {
                (0..n).fold(Poly::zero(n), |acc, c| &acc + &Poly::var(n, c).scale(&a[(r, c)]))
            })
            .collect();
        Chart {
            label: self.label.clone(),
            param_dim: n,
            coordinates: self.coordinates.iter().map(|f| f.compose(&subs)).collect(),
            known: self.known,
        }
    }

    /// Applies a linear map `M: C^{n+a} → C^m` to the coordinates.
    pub fn map_linear(&self, m: &Matrix, label: impl Into<String>) -> Chart {
        assert_eq!(m.cols(), self.ambient_dim(), "linear map has wrong source dimension");
        let n = self.param_dim;
        let coordinates = (0..m.rows())
            .map(|r| {
                self.coordinates
                    .iter()
                    .enumerate()
                    .fold(Poly::zero(n), |acc, (c, f)| &acc + &f.scale(&m[(r, c)]))
            })
            .collect();
        Chart {
            label: label.into(),
            param_dim: n,
            coordinates,
            known: None,
        }
    }

    /// Parses the raw chart format: first line `n a`, then `n + a` polynomials
    /// in `t1..tn`, one per line. `#` starts a comment; blank lines are ignored.
    pub fn parse_raw(label: impl Into<String>, text: &str) -> Result<Chart, VarietyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| VarietyError::RawInput {
            line: 1,
            msg: "missing header `n a`".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| VarietyError::RawInput {
                line: hline,
                msg: format!("bad header {header:?}"),
            })?;
        let [n, a] = dims[..] else {
            return Err(VarietyError::RawInput {
                line: hline,
                msg: format!("header must be `n a`, got {header:?}"),
            });
        };
        let mut coordinates = Vec::with_capacity(n + a);
        for (line, src) in lines {
            let p = parse_poly(src, n).map_err(|e| VarietyError::RawInput {
                line,
                msg: e.to_string(),
            })?;
            coordinates.push(p);
        }
        if coordinates.len() != n + a {
            return Err(VarietyError::RawInput {
                line: hline,
                msg: format!("expected {} polynomials, found {}", n + a, coordinates.len()),
            });
        }
        Chart::new(label, n, coordinates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_chart_parses() {
        let text = "# twisted cubic\n1 2\n t1\n t1^2 # conic\n\n t1^3\n";
        let c = Chart::parse_raw("cubic", text).unwrap();
        assert_eq!((c.param_dim(), c.ambient_dim()), (1, 3));
        assert_eq!(c.max_degree(), 3);
    }

    #[test]
    fn raw_chart_errors() {
        assert!(matches!(Chart::parse_raw("x", ""), Err(VarietyError::RawInput { .. })));
        assert!(matches!(Chart::parse_raw("x", "1 1\nt1\n"), Err(VarietyError::RawInput { .. })));
        assert!(matches!(Chart::parse_raw("x", "1 1\nt1\nt2\n"), Err(VarietyError::RawInput { line: 3, .. })));
        assert!(matches!(
            Chart::parse_raw("x", "1 1\nt1\nt1^2 + 1\n"),
            Err(VarietyError::NotCentered { coordinate: 1 })
        ));
    }

    #[test]
    fn recenter_keeps_zero_constant_terms() {
        let c = Chart::parse_raw("c", "2 1\nt1\nt2\nt1*t2 + t1^2\n").unwrap();
        let r = c.recenter(&[Scalar::from_int(2), Scalar::from_int(-1)]);
        assert!(r.coordinates().iter().all(|p| p.constant_term().is_zero()));
        // f(t + p) − f(p) at t = (1, 1): f(3, 0) − f(2, −1) = (3, 0, 9) − (2, −1, 2)
        let v = r.eval(&[Scalar::from_int(1), Scalar::from_int(1)]);
        assert_eq!(v, vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::from_int(7)]);
    }
}
