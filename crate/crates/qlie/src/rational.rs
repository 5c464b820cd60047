//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; the canonical zero is 0/1. Serialized form is `"p/q"`,
//! or just `"p"` when the denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Render in the interchange format: `"p"` or `"p/q"`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"`. Rejects empty parts, a zero denominator and any
/// surrounding noise; the result is reduced with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Size measure used for pivot selection: bit length of numerator times
/// denominator (smaller means a nicer pivot). Zero gets usize::MAX so it is
/// never selected.
pub fn pivot_weight(x: &Rational) -> u64 {
    if x.is_zero() {
        return u64::MAX;
    }
    (x.numer().abs().bits() + x.denom().bits()) as u64
}

/// Exact square root if `x` is a square of a rational, else None.
/// Only meaningful for non-negative input.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trip() {
        for (n, d, s) in [(1i64, 2i64, "1/2"), (-3, 4, "-3/4"), (5, 1, "5"), (0, 7, "0"), (2, -4, "-1/2")] {
            let x = rat(n, d);
            assert_eq!(format_rational(&x), s);
            assert_eq!(parse_rational(s).unwrap(), x);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "1/", "/2", "1/2/3", " 1", "1.5", "a"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }
}
