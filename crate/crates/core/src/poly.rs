//! Sparse multivariate polynomials over Q(i), with exact differentiation and a
//! small text parser for raw chart files.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactla::Scalar;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `t_k` (0-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars, "variable index out of range");
        let mut m = vec![0; nvars];
        m[k] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(m, Scalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coefficient(&self, monomial: &[u32]) -> Scalar {
        self.terms.get(monomial).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(self.nvars, Scalar::one()), |acc, _| &acc * self)
    }

    /// Partial derivative with respect to `t_k`.
    pub fn derivative(&self, k: usize) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[k] == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[k] -= 1;
            p.add_term(dm, c * &Scalar::from_int(i64::from(m[k])));
        }
        p
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += &term;
        }
        acc
    }

    /// Substitutes `t_k ↦ subs[k]`; the result lives in the variables of `subs`.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "substitution has wrong arity");
        let target = subs.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (s, &e) in subs.iter().zip(m) {
                if e > 0 {
                    term = &term * &s.pow(e);
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = Poly::zero(self.nvars);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                p.add_term(m, a * b);
            }
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest degree first, then lexicographic.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (m, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { format!("t{}", k + 1) } else { format!("t{}^{}", k + 1, e) })
                .collect();
            match (vars.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{}", coefficient_expr(c))?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", coefficient_expr(c), vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A coefficient in a form `parse_poly` accepts.
fn coefficient_expr(c: &Scalar) -> String {
    use num_traits::Signed;
    if c.is_real() {
        return format!("({})", c.re());
    }
    let sign = if c.im().is_negative() { '-' } else { '+' };
    format!("({} {sign} {}*i)", c.re(), c.im().abs())
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

/// Parses a polynomial in `t1..t{nvars}`.
///
/// Grammar: sums and differences of products, `^` with a nonnegative integer
/// exponent, parentheses, integer or `p/q` literals, and `i` for the
/// imaginary unit. A literal directly followed by `/` is read as a fraction.
pub fn parse_poly(src: &str, nvars: usize) -> Result<Poly, ParsePolyError> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
        nvars,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParsePolyError {
        ParsePolyError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParsePolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer().ok_or_else(|| self.error("expected exponent"))?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<Poly, ParsePolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars, Scalar::i()))
            }
            Some(b't') => {
                self.pos += 1;
                let k = self.integer().ok_or_else(|| self.error("expected variable index"))?;
                let k = usize::try_from(k).unwrap_or(usize::MAX);
                if k == 0 || k > self.nvars {
                    return Err(self.error(&format!("variable t{k} out of range 1..={}", self.nvars)));
                }
                Ok(Poly::var(self.nvars, k - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.integer();
                let mut end = self.pos;
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if self.integer().is_none() {
                        return Err(self.error("expected denominator"));
                    }
                    end = self.pos;
                }
                let lit = std::str::from_utf8(&self.src[start..end]).expect("ascii literal");
                let c: Scalar = lit.parse().map_err(|_| self.error("bad numeric literal"))?;
                Ok(Poly::constant(self.nvars, c))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
