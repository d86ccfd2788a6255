// Elections with MM = PB = 0, with equal or bounded-ratio turnout.

use num_traits::{One, Zero};

use super::{orient, restore, ConstructionPlan, ConstructorError, Role, TurnoutLevel};
use crate::bounds::{turnout_zero_contains, zero_achievable_at, zero_region_contains, BoundsError};
use crate::election::{check_feasible, Election, SvPair, Turnout};
use crate::rational::{self, half, int, ratio, Exact, Rational};

/// Largest multiple of the requested district count tried before giving up.
const MAX_SCALE: usize = 10_000;

pub fn construct_zero(p: &SvPair) -> Result<Election, ConstructorError> {
    plan_zero(p)?.compile()
}

/// Equal-turnout layout with MM = PB = 0 at the pair's (V, S).
///
/// When `p.n()` districts cannot host such a layout the district count is
/// raised to the smallest multiple that can; S is unchanged.
pub fn plan_zero(p: &SvPair) -> Result<ConstructionPlan, ConstructorError> {
    let (q, mirrored) = orient(p)?;
    let s = q.s();
    if !zero_region_contains(q.v(), &s) {
        return Err(outside(q.v(), &s));
    }
    let mut scaled = q.clone();
    let mut factor = 1;
    while !zero_achievable_at(&scaled) {
        factor += 1;
        if factor > MAX_SCALE {
            return Err(ConstructorError::NoDistrictCount(q.n() * MAX_SCALE));
        }
        scaled = SvPair::from_counts(q.v().clone(), q.n() * factor, q.lost() * factor).expect("scaled counts are valid");
    }
    let mut plan = oriented(&scaled);
    if factor > 1 {
        plan.case = format!("{} [n raised from {} to {}]", plan.case, q.n(), scaled.n());
    }
    Ok(restore(plan, mirrored))
}

fn outside(v: &Rational, s: &Rational) -> ConstructorError {
    ConstructorError::OutsideZeroRegion { v: Exact(v).to_string(), s: Exact(s).to_string() }
}

// Oriented pair (S ≥ ½) on which `zero_achievable_at` holds.
fn oriented(p: &SvPair) -> ConstructionPlan {
    let n = p.n();
    let l = p.lost();
    let v = p.v().clone();
    let h = half();
    if l == 0 || n == 1 {
        let mut plan = ConstructionPlan::new("every district at the mean");
        plan.add(v, n - l, Role::Winner).add(p.v().clone(), l, Role::Loser);
        return plan;
    }
    if p.s() == h {
        let t = if v < h { &h - &v } else { &v - &h };
        let mut plan = ConstructionPlan::new("S = 1/2: losers and winners mirrored about the mean");
        plan.add(&v - &t, l, Role::Loser).add(&v + &t, n - l, Role::Winner);
        return plan.with(|c| c.gamma = Some(t));
    }
    if v <= ratio(3, 4) {
        let t = &v - &h;
        let mut plan = ConstructionPlan::new("1/2 <= V <= 3/4: a block at the mean flanked by mirrored pairs");
        plan.add(&v - &t, l, Role::Loser).add(v.clone(), n - 2 * l, Role::Winner).add(&v + &t, l, Role::Winner);
        return plan.with(|c| c.gamma = Some(t));
    }
    let needed = int(l as i64) * (&v - &h) / (Rational::one() - &v);
    let top: usize = (rational::floor(&needed) + 1u32).try_into().expect("district count fits usize");
    high_vote_layout(n, l, &v, top, TurnoutLevel::Low)
}

/// V > ¾: ℓ losers at ½⁻, `top − ℓ` winners at y < V, a block at V and
/// `top` districts at 1, where y balances the mean.
fn high_vote_layout(n: usize, l: usize, v: &Rational, top: usize, top_level: TurnoutLevel) -> ConstructionPlan {
    let h = half();
    let one = Rational::one();
    let lifted = int(top as i64) * (&one - v) - int(l as i64) * (v - &h);
    let y = v - &lifted / int((top - l) as i64);
    let mut plan = ConstructionPlan::new("V > 3/4: top districts at 1 balanced by winners just below the mean");
    plan.add(h, l, Role::Loser)
        .add(y.clone(), top - l, Role::Winner)
        .add(v.clone(), n - 2 * top, Role::Winner)
        .add_at(one, top, Role::Winner, top_level);
    plan.with(|c| {
        c.k = Some(top as i64);
        c.p = Some(y);
    })
}

pub fn construct_zero_turnout(v: &Rational, s: &Rational, c: &Rational) -> Result<Election, ConstructorError> {
    plan_zero_turnout(v, s, c)?.compile()
}

/// Layout with MM = PB = 0 at statewide vote share `v` and seat share `s`
/// whose district turnouts differ by a factor of at most `c`.
///
/// MM and PB read raw district shares, so the shares form an equal-turnout
/// zero layout and the turnout weights alone move the statewide share.
pub fn plan_zero_turnout(v: &Rational, s: &Rational, c: &Rational) -> Result<ConstructionPlan, ConstructorError> {
    if *c < Rational::one() {
        return Err(BoundsError::TurnoutRatio(Exact(c).to_string()).into());
    }
    check_feasible(v, s, Turnout::Unconstrained)?;
    let base_n = usize::try_from(s.denom().clone()).map_err(|_| ConstructorError::NoDistrictCount(usize::MAX))?;
    if check_feasible(v, s, Turnout::Equal).is_ok() && zero_region_contains(v, s) {
        let pair = SvPair::new(v.clone(), s, base_n.max(2)).expect("n is a multiple of the seat denominator");
        return plan_zero(&pair);
    }
    if !turnout_zero_contains(v, s, c)? {
        return Err(band_error(v, s, c));
    }
    let one = Rational::one();
    let h = half();
    // Orient so that the needed turnout boost sits on party A's side.
    let mirrored = *s < h || (*s == h && *v < h);
    let (v, s) = if mirrored { (&one - v, &one - s) } else { (v.clone(), s.clone()) };
    let plan = if v < h {
        low_side(&v, &s, base_n)
    } else if s == h {
        let weight = (&v - &h) / (&one - &v);
        let half_n = base_n.max(2) / 2;
        let mut plan = ConstructionPlan::new("S = 1/2: losers at 1/2, high-turnout winners at 1");
        plan.add(h, half_n, Role::Loser).add_at(one, half_n, Role::Winner, TurnoutLevel::High);
        Ok(plan.with(|ch| ch.high_weight = Some(weight)))
    } else {
        high_side(&v, &s, c, base_n)
    }?;
    Ok(restore(plan, mirrored))
}

fn band_error(v: &Rational, s: &Rational, c: &Rational) -> ConstructorError {
    let h = half();
    let one = Rational::one();
    let oriented_s = if *s < h { &one - s } else { s.clone() };
    match crate::bounds::zero_region_turnout(&oriented_s, c) {
        Ok(band) => {
            let (lo, hi) = if *s < h { (&one - &band.v_hi, &one - &band.v_lo) } else { (band.v_lo, band.v_hi) };
            ConstructorError::OutsideBand { v: Exact(v).to_string(), lo: Exact(&lo).to_string(), hi: Exact(&hi).to_string() }
        }
        Err(e) => e.into(),
    }
}

// S ≥ ½, V < ½: high-turnout losers at 0 pull the statewide share down.
fn low_side(v: &Rational, s: &Rational, n: usize) -> Result<ConstructionPlan, ConstructorError> {
    let h = half();
    let l = rational::as_i64(&(int(n as i64) * (Rational::one() - s))).expect("integer seat count") as usize;
    let nn = int(n as i64);
    let weight = (&nn / (v * int(2)) - &nn + int(l as i64)) / int(l as i64);
    let mut plan = ConstructionPlan::new("V < 1/2: high-turnout losers at 0, winners at 1/2 and 1");
    plan.add_at(Rational::zero(), l, Role::Loser, TurnoutLevel::High)
        .add(h, n - 2 * l, Role::Winner)
        .add(Rational::one(), l, Role::Winner);
    Ok(plan.with(|ch| ch.high_weight = Some(weight)))
}

// S > ½ with V past the equal-turnout region: the V > ¾ layout at a lower
// share V₀, with its top block at high turnout.
fn high_side(v: &Rational, s: &Rational, c: &Rational, base_n: usize) -> Result<ConstructionPlan, ConstructorError> {
    let one = Rational::one();
    let h = half();
    for factor in 1..=MAX_SCALE {
        let n = base_n * factor;
        let l = rational::as_i64(&(int(n as i64) * (&one - s))).expect("integer seat count") as usize;
        let top = (n - 1) / 2;
        if top <= l {
            continue;
        }
        let bound = (int(top as i64) + int(l as i64) * &h) / int((top + l) as i64);
        let v0 = &bound - (&bound - ratio(3, 4)) / int(n as i64);
        let weight = &one + int(n as i64) * (v - &v0) / (int(top as i64) * (&one - v));
        if weight <= *c && weight >= one {
            let mut plan = high_vote_layout(n, l, &v0, top, TurnoutLevel::High);
            plan.case = format!("{} [high-turnout top block, base share {}]", plan.case, Exact(&v0));
            return Ok(plan.with(|ch| ch.high_weight = Some(weight)));
        }
    }
    Err(ConstructorError::NoDistrictCount(base_n * MAX_SCALE))
}
