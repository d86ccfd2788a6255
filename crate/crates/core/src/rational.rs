//! Exact rational helpers.
//!
//! Every share, weight and metric value in the crate is a [`Rational`]
//! (an arbitrary-precision `BigRational`). Floats only appear when a value is
//! drawn or printed as an approximation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Value of an integral rational as `i64`, if it is one and fits.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact value of a finite `f64`. Used only by generators that start from floats.
pub fn from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// `p/q`, or just `p` when the value is an integer.
pub fn format_exact(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering with `places` digits, rounded half away from zero.
pub fn format_decimal(q: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + half()).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = places)
    }
}

/// `p/q (0.dddddd)`, the form used in every human-readable report.
pub fn format_both(q: &Rational) -> String {
    format!("{} ({})", format_exact(q), format_decimal(q, 6))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("not a rational number: {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parse `"3/8"`, `"0.375"`, `"-2"`, or `"1e-6"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(|| ParseRationalError::Invalid(t.into()))?;
        let den = parse_decimal(den.trim()).ok_or_else(|| ParseRationalError::Invalid(t.into()))?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(t.into()));
        }
        return Ok(num / den);
    }
    parse_decimal(t).ok_or_else(|| ParseRationalError::Invalid(t.into()))
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let numer: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().ok()? };
    let mut value = BigRational::new(numer, BigInt::from(10u32).pow(frac.len() as u32));
    let ten = int(10);
    if exponent >= 0 {
        value *= num_traits::pow(ten, exponent as usize);
    } else {
        value /= num_traits::pow(ten, exponent.unsigned_abs() as usize);
    }
    Some(if negative { -value } else { value })
}

/// Serde adapter: rationals travel as `"p/q"` strings and are read from
/// strings or JSON numbers (kept exact through `arbitrary_precision`).
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_exact(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        from_json(&value).map_err(de::Error::custom)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Rational, String> {
        match value {
            serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
            other => Err(format!("expected a number or \"p/q\" string, found {other}")),
        }
    }
}

/// Serde adapter for optional rationals; `None` is written as null.
pub mod serde_rational_opt {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&format_exact(q)),
            None => s.serialize_none(),
        }
    }
}

/// Thin display wrapper printing `p/q`.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_exact(self.0))
    }
}

pub(crate) fn is_half(q: &Rational) -> bool {
    q.denom() == &BigInt::from(2) && q.numer().is_one()
}

pub(crate) fn min_of(a: &Rational, b: &Rational) -> Rational {
    if a <= b { a.clone() } else { b.clone() }
}

pub(crate) fn max_of(a: &Rational, b: &Rational) -> Rational {
    if a >= b { a.clone() } else { b.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_usual_spellings() {
        assert_eq!(parse_rational("37/100").unwrap(), ratio(37, 100));
        assert_eq!(parse_rational("0.37").unwrap(), ratio(37, 100));
        assert_eq!(parse_rational(".5").unwrap(), half());
        assert_eq!(parse_rational("-1e-6").unwrap(), ratio(-1, 1_000_000));
        assert_eq!(parse_rational("2.5e1").unwrap(), int(25));
        assert_eq!(parse_rational("0.748").unwrap(), ratio(187, 250));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_exact_and_decimal() {
        assert_eq!(format_exact(&ratio(9, 100)), "9/100");
        assert_eq!(format_exact(&int(-2)), "-2");
        assert_eq!(format_decimal(&ratio(13, 60), 6), "0.216667");
        assert_eq!(format_decimal(&ratio(-3, 80), 6), "-0.037500");
        assert_eq!(format_decimal(&ratio(-1, 10_000_000), 6), "0.000000");
        assert_eq!(format_both(&ratio(2, 5)), "2/5 (0.400000)");
    }

    #[test]
    fn json_numbers_stay_exact() {
        let v: serde_json::Value = serde_json::from_str("0.8267").unwrap();
        assert_eq!(serde_rational::from_json(&v).unwrap(), ratio(8267, 10000));
    }
}
