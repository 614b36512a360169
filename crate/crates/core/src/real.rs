//! Extended-precision decimal reals.
//!
//! Everything that must hold more digits than an `f64` goes through [`Real`],
//! a decimal big float with an explicit working precision. Values built here
//! always carry a finite precision; dashu treats precision 0 as "unlimited"
//! and refuses to divide such numbers.

use std::str::FromStr;

use dashu_base::Abs;
use dashu_float::DBig;
use dashu_int::{IBig, Sign, UBig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

pub type Real = DBig;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: usize = 50;

/// Environment variable that overrides [`DEFAULT_DIGITS`] for front ends.
pub const DIGITS_ENV: &str = "RECURLAB_DIGITS";

/// Reads [`DIGITS_ENV`], falling back to [`DEFAULT_DIGITS`].
pub fn default_digits() -> usize {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&d: &usize| d >= 10)
        .unwrap_or(DEFAULT_DIGITS)
}

pub fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let sign = if sign == num_bigint::Sign::Minus {
        Sign::Negative
    } else {
        Sign::Positive
    };
    IBig::from_parts(sign, mag)
}

pub fn from_bigint(n: &BigInt, digits: usize) -> Real {
    Real::from(to_ibig(n)).with_precision(digits).value()
}

/// Integer held exactly: precision equals its digit count.
pub fn exact_integer(n: &BigInt) -> Real {
    let len = n.magnitude().to_string().len();
    from_bigint(n, len.max(1))
}

pub fn from_i64(n: i64, digits: usize) -> Real {
    Real::from(n).with_precision(digits).value()
}

pub fn from_ratio(q: &BigRational, digits: usize) -> Real {
    let num = from_bigint(q.numer(), digits);
    let den = from_bigint(q.denom(), digits);
    num / den
}

pub fn from_f64(x: f64, digits: usize) -> Real {
    // `{:e}` prints the shortest round-tripping decimal.
    Real::from_str(&format!("{x:e}"))
        .expect("finite f64 formats as a decimal")
        .with_precision(digits)
        .value()
}

/// Parses a decimal literal such as `1.5`, `-2e-3` or `7`.
pub fn parse(text: &str, digits: usize) -> Result<Real> {
    let trimmed = text.trim();
    // dashu does not accept a leading '+'.
    let trimmed = trimmed.strip_prefix('+').unwrap_or(trimmed);
    Real::from_str(trimmed)
        .map(|v| v.with_precision(digits).value())
        .map_err(|_| Error::InvalidArgument(format!("not a decimal number: {text:?}")))
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn abs(x: &Real) -> Real {
    x.clone().abs()
}

pub fn is_zero(x: &Real) -> bool {
    *x.repr().significand() == IBig::ZERO
}

pub fn is_negative(x: &Real) -> bool {
    x.sign() == Sign::Negative && !is_zero(x)
}

pub fn is_positive(x: &Real) -> bool {
    x.sign() == Sign::Positive && !is_zero(x)
}

/// `10^-exp` at the given precision.
pub fn ten_pow_neg(exp: usize, digits: usize) -> Real {
    Real::from_parts(IBig::ONE, -(exp as isize))
        .with_precision(digits)
        .value()
}

/// Exact dyadic/decimal rational value of a real, for seeding exact routines.
pub fn to_ratio(x: &Real) -> BigRational {
    let repr = x.repr();
    let sig = BigInt::from_str(&repr.significand().to_string()).expect("integer significand");
    let exp = repr.exponent();
    let ten = BigInt::from(10);
    if exp >= 0 {
        BigRational::from_integer(sig * num_traits::pow(ten, exp as usize))
    } else {
        BigRational::new(sig, num_traits::pow(ten, (-exp) as usize))
    }
}

/// Number of decimal digits before the point in `|x|`, at least 1.
pub fn integer_digits(x: &BigRational) -> usize {
    let int = x.abs().to_integer();
    int.to_string().trim_start_matches('-').len().max(1)
}

/// Formats a real with `decimals` digits after the point (truncating).
pub fn format_fixed(x: &Real, decimals: usize) -> String {
    let s = x.to_string();
    match s.find('.') {
        Some(dot) => {
            let end = (dot + 1 + decimals).min(s.len());
            s[..end].to_string()
        }
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_round_trip_through_ibig() {
        for v in ["0", "-1", "123456789012345678901234567890", "-98765432109876543210"] {
            let n = BigInt::from_str(v).unwrap();
            assert_eq!(to_ibig(&n).to_string(), v);
        }
    }

    #[test]
    fn ratio_conversion_keeps_requested_digits() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let r = from_ratio(&q, 30);
        assert!(r.to_string().starts_with("0.333333333333333333333333333"));
        assert_eq!(r.precision(), 30);
    }

    #[test]
    fn to_ratio_is_exact() {
        let r = parse("-12.375", 20).unwrap();
        assert_eq!(to_ratio(&r), BigRational::new(BigInt::from(-99), BigInt::from(8)));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("abc", 20).is_err());
        assert!(parse("+1.5", 20).is_ok());
    }
}
