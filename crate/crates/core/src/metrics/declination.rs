// Fixed-point arctangent for the declination angle. Values are carried as
// big integers scaled by 10^(DECLINATION_DIGITS + GUARD_DIGITS) and rounded
// back to DECLINATION_DIGITS at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MetricValue;
use crate::election::Election;
use crate::rational::{half, int, Rational};

/// Decimal digits kept in declination values.
pub const DECLINATION_DIGITS: u32 = 50;
const GUARD_DIGITS: u32 = 20;

fn scale() -> BigInt {
    BigInt::from(10u32).pow(DECLINATION_DIGITS + GUARD_DIGITS)
}

fn to_fixed(q: &Rational, scale: &BigInt) -> BigInt {
    (q.numer() * scale).div_floor(q.denom())
}

// Euler's series, valid for 0 <= x <= 1 where the ratio x²/(1+x²) is at most ½.
fn atan_small(x: &Rational, scale: &BigInt) -> BigInt {
    let x2 = x * x;
    let denom = Rational::one() + &x2;
    let ratio = to_fixed(&(&x2 / &denom), scale);
    let mut term = to_fixed(&(x / &denom), scale);
    let mut sum = term.clone();
    let mut k = 1u64;
    while !term.is_zero() {
        term = (term * &ratio * BigInt::from(2 * k)) / (scale * BigInt::from(2 * k + 1));
        sum += &term;
        k += 1;
    }
    sum
}

fn pi_fixed(scale: &BigInt) -> BigInt {
    16 * atan_small(&Rational::new(1.into(), 5.into()), scale)
        - 4 * atan_small(&Rational::new(1.into(), 239.into()), scale)
}

fn atan_fixed(x: &Rational, scale: &BigInt) -> BigInt {
    if x.is_negative() {
        return -atan_fixed(&-x, scale);
    }
    if *x > Rational::one() {
        pi_fixed(scale) / 2 - atan_small(&x.recip(), scale)
    } else {
        atan_small(x, scale)
    }
}

fn round_to_digits(fixed: BigInt) -> Rational {
    let guard = BigInt::from(10u32).pow(GUARD_DIGITS);
    let doubled: BigInt = fixed * 2 + &guard;
    let rounded = doubled.div_floor(&(guard * 2));
    Rational::new(rounded, BigInt::from(10u32).pow(DECLINATION_DIGITS))
}

/// arctan(x) to [`DECLINATION_DIGITS`] decimal digits.
pub fn atan(x: &Rational) -> Rational {
    round_to_digits(atan_fixed(x, &scale()))
}

/// π to [`DECLINATION_DIGITS`] decimal digits.
pub fn pi() -> Rational {
    round_to_digits(pi_fixed(&scale()))
}

pub(super) fn declination(e: &Election) -> MetricValue {
    let n = e.len() as i64;
    let (won, lost): (Vec<_>, Vec<_>) = e.districts().iter().partition(|d| d.is_won());
    if won.is_empty() || lost.is_empty() {
        return MetricValue::undefined();
    }
    let w = won.len() as i64;
    let l = lost.len() as i64;
    let mean_won: Rational = won.iter().map(|d| d.share()).sum::<Rational>() / int(w);
    let mean_lost: Rational = lost.iter().map(|d| d.share()).sum::<Rational>() / int(l);
    let win_slope = (mean_won - half()) * int(2 * n) / int(w);
    let loss_slope = (half() - mean_lost) * int(2 * n) / int(l);
    let s = scale();
    let angle = atan_fixed(&win_slope, &s) - atan_fixed(&loss_slope, &s);
    let scaled: BigInt = angle * 2 * &s;
    let value = scaled.div_floor(&pi_fixed(&s));
    MetricValue::defined(round_to_digits(value))
}
