// Elections realizing a chosen MM or PB value inside the fixed-n range.

use num_traits::{One, Zero};

use super::{construct_mm_extremal, ConstructionPlan, ConstructorError, Extremum, Role};
use crate::bounds::{mm_range_fixed, pb_range_fixed, MetricInterval};
use crate::election::{Election, SvPair, Turnout};
use crate::rational::{self, half, int, Exact, Rational};

fn outside(target: &Rational, range: &MetricInterval) -> ConstructorError {
    ConstructorError::TargetOutsideRange { target: Exact(target).to_string(), range: range.to_string() }
}

pub fn construct_mm_value(p: &SvPair, target: &Rational) -> Result<Election, ConstructorError> {
    plan_mm_value(p, target)?.compile()
}

/// MM is linear along the segment between the sorted minimum and maximum
/// witnesses (order and seat outcomes are shared), so a mix of the two
/// reaches every value in between.
pub fn plan_mm_value(p: &SvPair, target: &Rational) -> Result<ConstructionPlan, ConstructorError> {
    let range = mm_range_fixed(p)?;
    if !range.contains(target) {
        return Err(outside(target, &range));
    }
    let low = construct_mm_extremal(p, Extremum::Min)?;
    let high = construct_mm_extremal(p, Extremum::Max)?;
    let span = range.hi() - range.lo();
    let weight_low = if span.is_zero() { Rational::one() } else { (range.hi() - target) / span };
    let weight_high = Rational::one() - &weight_low;
    let mut plan = ConstructionPlan::new("mix of the minimum and maximum witnesses");
    let l = p.lost();
    for (i, (a, b)) in low.shares().zip(high.shares()).enumerate() {
        let share = &weight_low * a + &weight_high * b;
        let role = if i < l { Role::Loser } else { Role::Winner };
        plan.add(share, 1, role);
    }
    merge_runs(&mut plan);
    Ok(plan.with(|c| c.gamma = Some(weight_low)))
}

// Collapse adjacent identical buckets.
fn merge_runs(plan: &mut ConstructionPlan) {
    let mut merged: Vec<super::Bucket> = Vec::with_capacity(plan.buckets.len());
    for b in plan.buckets.drain(..) {
        match merged.last_mut() {
            Some(last)
                if last.share == b.share
                    && last.winner_at_half == b.winner_at_half
                    && last.turnout_level == b.turnout_level =>
            {
                last.count += b.count
            }
            _ => merged.push(b),
        }
    }
    plan.buckets = merged;
}

pub fn construct_pb_value(p: &SvPair, target: &Rational) -> Result<Election, ConstructorError> {
    plan_pb_value(p, target)?.compile()
}

// Share interval of one (outcome, side of the mean) class, with closed flags.
#[derive(Clone)]
struct Class {
    role: Role,
    lo: Rational,
    lo_closed: bool,
    hi: Rational,
    hi_closed: bool,
}

fn classes(v: &Rational) -> [Option<Class>; 6] {
    let h = half();
    let zero = Rational::zero();
    let one = Rational::one();
    let make = |role, lo: Rational, lo_closed, hi: Rational, hi_closed| {
        let nonempty = lo < hi || (lo == hi && lo_closed && hi_closed);
        nonempty.then_some(Class { role, lo, lo_closed, hi, hi_closed })
    };
    let at = |role| Some(Class { role, lo: v.clone(), lo_closed: true, hi: v.clone(), hi_closed: true });
    [
        // Losers below, at and above the mean.
        if *v <= h { make(Role::Loser, zero.clone(), true, v.clone(), false) } else { make(Role::Loser, zero, true, h.clone(), true) },
        if *v <= h { at(Role::Loser) } else { None },
        if *v < h { make(Role::Loser, v.clone(), false, h.clone(), true) } else { None },
        // Winners below, at and above the mean.
        if *v > h { make(Role::Winner, h.clone(), true, v.clone(), false) } else { None },
        if *v >= h { at(Role::Winner) } else { None },
        if *v >= h { make(Role::Winner, v.clone(), false, one, true) } else { make(Role::Winner, h, true, one, true) },
    ]
}

/// PB at fixed n only depends on how many districts sit above and below
/// the mean; search the class counts (first in lexicographic order) whose
/// share intervals can add up to nV, then place every district at the same
/// relative position θ inside its class interval.
pub fn plan_pb_value(p: &SvPair, target: &Rational) -> Result<ConstructionPlan, ConstructorError> {
    p.check_feasible(Turnout::Equal)?;
    let range = pb_range_fixed(p)?;
    let n = p.n();
    let scaled = target * int(2 * n as i64);
    let k = match rational::as_i64(&scaled) {
        Some(k) if range.contains(target) => k,
        _ => return Err(outside(target, &range)),
    };
    let v = p.v();
    let total = int(n as i64) * v;
    let cls = classes(v);
    let (l, w) = (p.lost(), p.won());
    for lb in 0..=l {
        for la in 0..=l - lb {
            let lab = l - lb - la;
            for wb in 0..=w {
                for wa in 0..=w - wb {
                    let wab = w - wb - wa;
                    let counts = [lb, la, lab, wb, wa, wab];
                    if (lab + wab) as i64 - (lb + wb) as i64 != k {
                        continue;
                    }
                    if let Some(plan) = place(&cls, &counts, &total) {
                        return Ok(plan.with(|c| c.k = Some(k)));
                    }
                }
            }
        }
    }
    Err(outside(target, &range))
}

fn place(cls: &[Option<Class>; 6], counts: &[usize; 6], total: &Rational) -> Option<ConstructionPlan> {
    let mut lo_sum = Rational::zero();
    let mut hi_sum = Rational::zero();
    let (mut lo_closed, mut hi_closed) = (true, true);
    for (c, &count) in cls.iter().zip(counts) {
        if count == 0 {
            continue;
        }
        let c = c.as_ref()?;
        lo_sum += int(count as i64) * &c.lo;
        hi_sum += int(count as i64) * &c.hi;
        lo_closed &= c.lo_closed;
        hi_closed &= c.hi_closed;
    }
    let inside = (lo_sum < *total || (lo_sum == *total && lo_closed)) && (*total < hi_sum || (*total == hi_sum && hi_closed));
    if !inside {
        return None;
    }
    let theta = if hi_sum == lo_sum { Rational::zero() } else { (total - &lo_sum) / (&hi_sum - &lo_sum) };
    let mut plan = ConstructionPlan::new("classes above, at and below the mean at a common relative position");
    for (c, &count) in cls.iter().zip(counts) {
        if let (Some(c), true) = (c, count > 0) {
            plan.add(&c.lo + &theta * (&c.hi - &c.lo), count, c.role);
        }
    }
    Some(plan.with(|ch| ch.p = Some(theta)))
}
