// Where MM = PB = 0 is achievable.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{q, BoundsError};
use crate::election::{check_feasible, SvPair, Turnout};
use crate::rational::{self, half, int, Exact, Rational};

/// Exact limit region where some election has MM = PB = 0.
///
/// Besides the closed-form region this includes the whole S = ½ row for
/// ¼ ≤ V ≤ ¾ and the sweep corners (1, 1) and (0, 0).
pub fn zero_region_contains(v: &Rational, s: &Rational) -> bool {
    if check_feasible(v, s, Turnout::Equal).is_err() {
        return false;
    }
    let h = half();
    if *s < h {
        return zero_region_contains(&(Rational::one() - v), &(Rational::one() - s));
    }
    if *s == h {
        return q(1, 4) <= *v && *v <= q(3, 4);
    }
    if *v < h {
        false
    } else if *v < q(3, 4) || v.is_one() {
        true
    } else {
        *s > curve_threshold(v)
    }
}

// (3V − 2)/(2V − 1), the lower seat boundary of the region for V ≥ ¾.
fn curve_threshold(v: &Rational) -> Rational {
    (v * int(3) - int(2)) / (v * int(2) - Rational::one())
}

/// The region in its literal closed form, without the S = ½ row or the
/// sweep corners. Kept for comparison with the turnout band at C = 1.
pub fn closed_form_zero_region(v: &Rational, s: &Rational) -> bool {
    let h = half();
    if *s < h {
        return closed_form_zero_region(&(Rational::one() - v), &(Rational::one() - s));
    }
    if *s > Rational::one() {
        return false;
    }
    let three_quarters = q(3, 4);
    (h <= *v && *v < three_quarters) || (three_quarters <= *v && *v <= Rational::one() && *s > curve_threshold(v))
}

/// Whether an equal-turnout election with `n` districts has MM = PB = 0 at
/// the pair's (V, S).
pub fn zero_achievable_at(p: &SvPair) -> bool {
    if !p.is_feasible(Turnout::Equal) {
        return false;
    }
    if p.n() <= 2 {
        return true;
    }
    let p = if p.s() < half() { p.swapped() } else { p.clone() };
    let v = p.v();
    let h = half();
    if p.s() == h {
        return q(1, 4) <= *v && *v <= q(3, 4);
    }
    if *v < h {
        return false;
    }
    if *v <= q(3, 4) || v.is_one() {
        return true;
    }
    // Need q winners at the top with ℓ(V − ½)/(1 − V) < q ≤ (n − 1)/2.
    let floor_needed = int(p.lost() as i64) * (v - &h) / (Rational::one() - v);
    let smallest = rational::floor(&floor_needed) + 1;
    smallest <= ((p.n() as i64 - 1) / 2).into()
}

/// V-interval `[v_lo, v_hi)` where MM = PB = 0 is achievable at seat share
/// `s ≥ ½` when district turnouts may differ by a factor of at most `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TurnoutZeroBand {
    #[serde(with = "rational::serde_rational")]
    pub s: Rational,
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    #[serde(with = "rational::serde_rational")]
    pub v_lo: Rational,
    #[serde(with = "rational::serde_rational")]
    pub v_hi: Rational,
}

impl TurnoutZeroBand {
    pub fn contains(&self, v: &Rational) -> bool {
        self.v_lo <= *v && *v < self.v_hi
    }
}

pub fn zero_region_turnout(s: &Rational, c: &Rational) -> Result<TurnoutZeroBand, BoundsError> {
    if *c < Rational::one() {
        return Err(BoundsError::TurnoutRatio(Exact(c).to_string()));
    }
    if *s < half() || *s > Rational::one() {
        return Err(BoundsError::SeatShareBelowHalf(Exact(s).to_string()));
    }
    let one = Rational::one();
    let tail = int(3) - s * int(2);
    let v_lo = one.clone() / (int(2) * (s + c * (&one - s)));
    let v_hi = (&one + c * &tail) / ((c + &one) * tail);
    Ok(TurnoutZeroBand { s: s.clone(), c: c.clone(), v_lo, v_hi })
}

/// Band membership on the whole unit square, using the party-swap mirror
/// below S = ½ (and both orientations on the S = ½ row).
pub fn turnout_zero_contains(v: &Rational, s: &Rational, c: &Rational) -> Result<bool, BoundsError> {
    if *s < Rational::zero() || *s > Rational::one() || *v < Rational::zero() || *v > Rational::one() {
        return Ok(false);
    }
    let h = half();
    let one = Rational::one();
    let direct = *s >= h && zero_region_turnout(s, c)?.contains(v);
    let mirrored = *s <= h && zero_region_turnout(&(&one - s), c)?.contains(&(&one - v));
    Ok(direct || mirrored)
}
