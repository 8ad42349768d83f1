//! Rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; `num-rational` maintains both invariants on every
//! operation.  The helpers here pin down the one convention the rest of the
//! crate relies on: the string form is `"p/q"`, with `/q` omitted when the
//! denominator is 1.

use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational, reduced.  Panics on `d == 0`; use only with literal
/// denominators.
pub fn rat_from(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::BadRational(s.to_string()));
    }
    match t.split_once('/') {
        None => BigInt::from_str(t)
            .map(Rat::from_integer)
            .map_err(|_| Error::BadRational(s.to_string())),
        Some((p, q)) => {
            let num = BigInt::from_str(p.trim()).map_err(|_| Error::BadRational(s.to_string()))?;
            let den = BigInt::from_str(q.trim()).map_err(|_| Error::BadRational(s.to_string()))?;
            if den.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-5/4", "10/4"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&rat_to_string(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(rat_to_string(&parse_rat("10/4").unwrap()), "5/2");
        assert_eq!(rat_to_string(&parse_rat("-6/3").unwrap()), "-2");
        assert_eq!(rat_to_string(&rat(0)), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "a", "1/0", "1/2/3", "1.5"] {
            assert!(parse_rat(s).is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = Rat::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        // normalization is idempotent: re-reducing changes nothing
        let again = Rat::new(r.numer().clone(), r.denom().clone());
        assert_eq!(r, again);
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = rat_from(1, 3);
        let b = rat_from(1, 6);
        assert_eq!(&a + &b, rat_from(1, 2));
        assert_eq!((&a + &b) - &b, a);
        assert_eq!(&a * &b, rat_from(1, 18));
        assert_eq!(&a / &b, rat(2));
    }
}
