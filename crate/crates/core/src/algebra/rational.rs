//! Exact rational helpers on top of [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses `p/q` or an integer. Decimal literals are rejected so the pipeline stays exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("`{text}` is not a rational literal (use p/q or an integer)")));
        }
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("`{text}`: {e}")))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse_int(p)?, parse_int(q)?);
            if q.is_zero() {
                return Err(Error::Parse(format!("`{text}` has a zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// `p/q`, or `p` when q = 1.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Fixed-point rendering with exactly `digits` decimals, rounding half to even.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value * Rational::from_integer(scale.clone());
    let (quot, rem) = scaled.numer().div_mod_floor(scaled.denom());
    // floor division: 0 <= rem < denom
    let twice: BigInt = rem * 2;
    let mut rounded = quot;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => rounded += 1,
        std::cmp::Ordering::Equal if rounded.is_odd() => rounded += 1,
        _ => {}
    }
    let negative = rounded.is_negative();
    let magnitude = rounded.abs().to_string();
    let body = if digits == 0 {
        magnitude
    } else {
        let padded = format!("{magnitude:0>width$}", width = digits + 1);
        let (whole, frac) = padded.split_at(padded.len() - digits);
        format!("{whole}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
