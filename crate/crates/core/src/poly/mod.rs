//! Dense univariate polynomials over a field.

mod hermite;

pub use hermite::{hermite_interpolant, indicator_values, reciprocal_shift_values};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{axpy, Mat, Scalar};

/// Polynomial with ascending coefficients `c_0 + c_1 x + ... + c_n x^n`.
/// The leading coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Poly {
            coeffs: vec![S::zero(), S::one()],
        }
    }

    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `x - root`.
    pub fn linear(root: &S) -> Self {
        Poly {
            coeffs: vec![-root.clone(), S::one()],
        }
    }

    /// `prod (x - root)^mult`.
    pub fn from_roots(roots: &[(S, usize)]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, (r, m)| &acc * &Self::linear(r).pow(*m))
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&(S::one() / lc.clone())),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly<S>) -> Result<(Poly<S>, Poly<S>)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if c.is_exact_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly<S>) -> Poly<S> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Whether `other = self * h` for some polynomial `h`; only zero is divisible by zero.
    pub fn divides(&self, other: &Poly<S>) -> bool {
        match other.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Horner evaluation at a scalar.
    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// `p(A) b` by Horner's scheme, using only matrix–vector products.
    pub fn eval_on_vector(&self, a: &Mat<S>, b: &[S]) -> Result<Vec<S>> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        if a.cols() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: b.len(),
            });
        }
        let mut v = vec![S::zero(); b.len()];
        for c in self.coeffs.iter().rev() {
            v = a.mul_vec(&v)?;
            axpy(&mut v, c, b);
        }
        Ok(v)
    }

    /// `p(A)` as a matrix.
    pub fn eval_on_matrix(&self, a: &Mat<S>) -> Result<Mat<S>> {
        let n = a.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&Mat::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// `(p(x) - p(1)) / (x - 1)`, by one pass of synthetic division.
    pub fn hat(&self) -> Poly<S> {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut q = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for k in (1..n).rev() {
            carry = carry + self.coeffs[k].clone();
            q[k - 1] = carry.clone();
        }
        Self::from_coeffs(q)
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &S) -> Poly<S> {
        let shift = Poly::from_coeffs(vec![c.clone(), S::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, k| {
            &(&acc * &shift) + &Self::constant(k.clone())
        })
    }

    /// Truncation to the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly<S> {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Power-series inverse modulo `x^n`. Needs a nonzero constant term.
    pub fn series_inverse(&self, n: usize) -> Result<Poly<S>> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let inv0 = S::one() / c0;
        let mut out: Vec<S> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = S::zero();
            for i in 1..=k {
                acc = acc + self.coeff(i) * out[k - i].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self::from_coeffs(out))
    }

    /// Factored rendering `(x-1)^3(x+2)` using the candidate roots, falling back
    /// to the expanded form when the roots do not account for the whole polynomial.
    pub fn render_factored(&self, roots: &[S]) -> String {
        let Some(lc) = self.leading() else {
            return "0".into();
        };
        if self.is_constant() {
            return self.to_string();
        }
        let mut rest = self.clone();
        let mut factors = Vec::new();
        for r in roots {
            let lin = Self::linear(r);
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 {
                let (qt, rm) = rest.divmod(&lin).expect("linear divisor");
                if !rm.is_zero() {
                    break;
                }
                rest = qt;
                mult += 1;
            }
            if mult > 0 {
                factors.push((r.clone(), mult));
            }
        }
        if factors.is_empty() || !rest.is_constant() {
            return self.to_string();
        }
        let mut out = String::new();
        if !lc.is_one() {
            out.push_str(&lc.render());
        }
        for (r, m) in factors {
            let (neg, mag) = r.sign_split();
            let f = if r.is_zero() {
                "x".to_string()
            } else if neg {
                format!("(x+{mag})")
            } else {
                format!("(x-{mag})")
            };
            out.push_str(&f);
            if m > 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            let (neg, mag) = c.sign_split();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (k, mag.as_str()) {
                (0, _) => mag.clone(),
                (_, "1") => String::new(),
                _ => mag.clone(),
            };
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            write!(f, "{sign}{body}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{unit, Q};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_coeffs(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn divmod_and_gcd_small_cases() {
        let (quot, rem) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(quot, p(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(
            p(&[1, 2]).divmod(&Poly::zero()),
            Err(Error::DivisionByZeroPolynomial)
        );
    }

    #[test]
    fn hat_examples() {
        // (x-1)^2 -> x-1
        assert_eq!(p(&[1, -2, 1]).hat(), p(&[-1, 1]));
        // constant -> 0
        assert!(p(&[1]).hat().is_zero());
        // x^2 -> x+1
        assert_eq!(p(&[0, 0, 1]).hat(), p(&[1, 1]));
    }

    #[test]
    fn scalar_evaluation() {
        assert_eq!(p(&[-1, 3, -3, 1]).eval(&q(1)), q(0));
        assert_eq!(p(&[-2, 1]).eval(&q(1)), q(-1));
    }

    #[test]
    fn vector_evaluation_of_one_is_identity() {
        let a = Mat::from_rows(&[vec![q(2), q(1)], vec![q(0), q(3)]]).unwrap();
        let b = vec![q(5), q(-1)];
        assert_eq!(Poly::one().eval_on_vector(&a, &b).unwrap(), b);
        assert_eq!(
            Poly::<Q>::zero().eval_on_vector(&a, &b).unwrap(),
            vec![q(0), q(0)]
        );
        assert!(Poly::<Q>::one().eval_on_vector(&a, &[q(1)]).is_err());
    }

    #[test]
    fn shifted_jordan_chain_step() {
        // J_2(1): (A - I) e2 = e1
        let a = Mat::from_rows(&[vec![q(1), q(1)], vec![q(0), q(1)]]).unwrap();
        let v = p(&[-1, 1]).eval_on_vector(&a, &unit(2, 1)).unwrap();
        assert_eq!(v, unit(2, 0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-1, 3, -3, 1]).to_string(), "x^3 - 3x^2 + 3x - 1");
        assert_eq!(p(&[-1, 3, -3, 1]).render_factored(&[q(1)]), "(x-1)^3");
        assert_eq!(p(&[2, 3, 1]).render_factored(&[q(-1), q(-2)]), "(x+1)(x+2)");
        assert_eq!(p(&[0, 1, 1]).render_factored(&[q(1)]), "x^2 + x");
        assert_eq!(Poly::<Q>::zero().to_string(), "0");
        let half = Poly::from_coeffs(vec![Q::new(1.into(), 2.into()), q(-1)]);
        assert_eq!(half.to_string(), "-x + 1/2");
    }

    #[test]
    fn series_inverse_and_shift() {
        // 1/(1 - x) = 1 + x + x^2 + ...
        assert_eq!(p(&[1, -1]).series_inverse(4).unwrap(), p(&[1, 1, 1, 1]));
        // (x)^2 shifted by 1 is x^2 + 2x + 1
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&q(1)), p(&[1, 2, 1]));
    }
}
