//! Exact rationals and their textual form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Parses `"9/16"`, `"-3"`, `"0.5625"` or `".5"` to an exact rational.
///
/// Decimals are read digit-for-digit, so `"0.2"` is exactly `1/5`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::Parse(format!("not a rational number: {text:?}"));
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() {
        return Err(err());
    }
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_digits(num).ok_or_else(err)?;
        let den = parse_digits(den).ok_or_else(err)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        Rational::new(num, den)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return Err(err());
        }
        let whole = if whole.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(whole).ok_or_else(err)?
        };
        let frac_value = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac).ok_or_else(err)?
        };
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        Rational::new(whole * &scale + frac_value, scale)
    } else {
        Rational::from_integer(parse_digits(body).ok_or_else(err)?)
    };
    Ok(if negative { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Lowest-terms fraction string: `"0"`, `"1"`, `"1/5"`, `"-3/2"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal with a fixed number of digits after the point, rounded half away
/// from zero. Used only for display columns.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = (r * Rational::from_integer(scale.clone())).round().to_integer();
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// `ceil(r * 2^64)` clamped to `[0, 2^64]`.
///
/// A draw `U` in `0..2^64` satisfies `U / 2^64 < r` exactly when
/// `U < ceil(r * 2^64)`, so this threshold turns every exact rational
/// comparison in the samplers into an integer comparison.
pub fn threshold_2_64(r: &Rational) -> u128 {
    if !r.is_positive() {
        return 0;
    }
    let two64 = BigInt::one() << 64u32;
    if *r >= Rational::one() {
        return 1u128 << 64;
    }
    let scaled = (r * Rational::from_integer(two64)).ceil().to_integer();
    let (_, digits) = scaled.to_u64_digits();
    let mut out: u128 = 0;
    for (i, d) in digits.iter().enumerate() {
        out |= (*d as u128) << (64 * i);
    }
    out
}
