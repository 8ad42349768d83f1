//! Univariate polynomials over `Rat`.
//!
//! Coefficients are stored in ascending degree and kept trimmed: the top
//! coefficient of a nonzero polynomial is nonzero, and zero is the empty
//! coefficient vector (degree -1).

use super::rat::{rat, rat_to_string, Rat};
use crate::error::Error;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn term(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![rat(0); k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        QPoly::term(rat(1), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat(0))
    }

    /// Ascending coefficient slice (trimmed).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut n: usize) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Coefficient reversal `t^d * p(1/t)` at display degree `d >= deg p`.
    pub fn reverse(&self, d: usize) -> QPoly {
        assert!(self.degree() <= d as isize, "reversal degree too small");
        let mut coeffs = vec![rat(0); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c.clone();
        }
        QPoly::new(coeffs)
    }

    /// Truncated product, keeping degrees `<= cap`.  Used for power series.
    pub fn mul_trunc(&self, other: &QPoly, cap: usize) -> QPoly {
        let mut coeffs = vec![rat(0); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > cap || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > cap {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }

    /// Power-series inverse through degree `cap`.  The constant term must be
    /// nonzero.
    pub fn series_inverse(&self, cap: usize) -> Result<QPoly, Error> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut inv = vec![rat(0); cap + 1];
        inv[0] = rat(1) / &c0;
        for k in 1..=cap {
            let mut s = rat(0);
            for j in 1..=k {
                s += self.coeff(j) * &inv[k - j];
            }
            inv[k] = -s / &c0;
        }
        Ok(QPoly::new(inv))
    }
}

/// Palindromy through display degree `d`: coefficient `k` equals coefficient
/// `d - k` for all `k`.  Errors if `deg p > d`.
pub fn poly_is_palindromic(p: &QPoly, d: usize) -> Result<bool, Error> {
    if p.degree() > d as isize {
        return Err(Error::DimensionMismatch(format!(
            "degree {} exceeds display degree {}",
            p.degree(),
            d
        )));
    }
    Ok((0..=d / 2).all(|k| p.coeff(k) == p.coeff(d - k)))
}

/// Exact quotient `num / den`; errors when the division leaves a remainder
/// or `den` is zero.
pub fn poly_exact_div(num: &QPoly, den: &QPoly) -> Result<QPoly, Error> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut rem = num.coeffs.clone();
    let dd = den.degree() as usize;
    let lead = den.coeff(dd);
    let mut quot = vec![rat(0); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let k = rem.len() - 1;
        let c = rem[k].clone() / &lead;
        if !c.is_zero() {
            quot[k - dd] = c.clone();
            for j in 0..=dd {
                let v = den.coeff(j) * &c;
                rem[k - dd + j] -= v;
            }
        }
        rem.pop();
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(QPoly::new(quot))
}

// ---- Add ----

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        QPoly::new(coeffs)
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

// ---- Sub ----

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        QPoly::new(coeffs)
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

// ---- Mul ----

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

// ---- Neg ----

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = rat_to_string(c);
            let (sign, mag) = match s.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", s),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (k, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "t")?,
                (1, m) => write!(f, "{m}*t")?,
                (_, "1") => write!(f, "t^{k}")?,
                (_, m) => write!(f, "{m}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat_from;

    fn p(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(QPoly::zero().degree(), -1);
        assert_eq!(p(&[3]).degree(), 0);
        assert_eq!(p(&[1, 0, 0]).degree(), 0);
        assert_eq!(p(&[0, 0, 5]).degree(), 2);
    }

    #[test]
    fn ring_ops() {
        let a = p(&[1, 2]); // 1 + 2t
        let b = p(&[0, 1, 1]); // t + t^2
        assert_eq!(&a + &b, p(&[1, 3, 1]));
        assert_eq!(&a - &a, QPoly::zero());
        assert_eq!(&a * &b, p(&[0, 1, 3, 2]));
        assert_eq!(-&a, p(&[-1, -2]));
        assert_eq!(a.eval(&rat(2)), rat(5));
        assert_eq!(p(&[-1, 0, 1]).eval(&rat_from(1, 2)), rat_from(-3, 4));
    }

    #[test]
    fn pow_and_reverse() {
        let t1 = p(&[-1, 1]); // t - 1
        assert_eq!(t1.pow(3), p(&[-1, 3, -3, 1]));
        assert_eq!(t1.pow(0), QPoly::one());
        // (1 + 2t) reversed at degree 2 is t^2 + 2t
        assert_eq!(p(&[1, 2]).reverse(2), p(&[0, 2, 1]));
    }

    #[test]
    fn palindromy() {
        assert!(poly_is_palindromic(&p(&[1, 2, 1]), 2).unwrap());
        assert!(poly_is_palindromic(&p(&[1, 0, 1]), 2).unwrap());
        assert!(!poly_is_palindromic(&p(&[1, 1]), 2).unwrap());
        assert!(poly_is_palindromic(&QPoly::zero(), 3).unwrap());
        assert!(poly_is_palindromic(&p(&[1, 1]), 1).unwrap());
        assert!(poly_is_palindromic(&p(&[1]), 0).unwrap());
        assert!(poly_is_palindromic(&p(&[0, 1]), 2).unwrap());
        assert!(poly_is_palindromic(&p(&[1, 2, 1]), 4).is_ok());
        assert!(!poly_is_palindromic(&p(&[1, 2, 1]), 4).unwrap());
        assert!(poly_is_palindromic(&p(&[1, 2, 3, 1]), 2).is_err());
    }

    #[test]
    fn exact_division() {
        // (t^2 - 1) / (t - 1) = t + 1
        let q = poly_exact_div(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        // division by a constant and by itself
        assert_eq!(poly_exact_div(&p(&[2, 4]), &p(&[2])).unwrap(), p(&[1, 2]));
        assert_eq!(poly_exact_div(&p(&[1, 2]), &p(&[1, 2])).unwrap(), QPoly::one());
        // multiply-then-divide round trip
        let a = p(&[-1, 3, -3, 1]);
        let b = p(&[1, 1]);
        assert_eq!(poly_exact_div(&(&a * &b), &b).unwrap(), a);
        // remainder cases
        assert!(poly_exact_div(&p(&[1, 1, 1]), &p(&[-1, 1])).is_err());
        assert!(poly_exact_div(&p(&[1]), &QPoly::zero()).is_err());
        // zero divided by anything nonzero
        assert_eq!(poly_exact_div(&QPoly::zero(), &p(&[3, 1])).unwrap(), QPoly::zero());
    }

    #[test]
    fn series_ops() {
        // 1/(1-t) = 1 + t + t^2 + ... through degree 4
        let geom = p(&[1, -1]).series_inverse(4).unwrap();
        assert_eq!(geom, p(&[1, 1, 1, 1, 1]));
        // (1-t) * (1+t+t^2+t^3+t^4) truncated at 4 is 1
        assert_eq!(p(&[1, -1]).mul_trunc(&geom, 4), QPoly::one());
        assert!(p(&[0, 1]).series_inverse(3).is_err());
    }
}
