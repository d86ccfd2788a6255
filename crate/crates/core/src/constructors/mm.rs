// Elections at the ends of the fixed-n MM range.

use num_traits::One;

use super::{orient, restore, ConstructionPlan, ConstructorError, Extremum, Role};
use crate::bounds::{mm_max_median, mm_min_is_flat, BoundsError};
use crate::election::{Election, SvPair};
use crate::rational::{half, int, min_of, ratio, Rational};

pub fn construct_mm_extremal(p: &SvPair, which: Extremum) -> Result<Election, ConstructorError> {
    plan_mm_extremal(p, which)?.compile()
}

/// Layout whose MM equals the requested end of `mm_range_fixed(p)`; n ≥ 3.
pub fn plan_mm_extremal(p: &SvPair, which: Extremum) -> Result<ConstructionPlan, ConstructorError> {
    if p.n() < 3 {
        return Err(BoundsError::TooFewDistricts(p.n()).into());
    }
    let (q, mirrored) = orient(p)?;
    let which = if mirrored { which.flipped() } else { which };
    let plan = if q.s() == half() {
        match which {
            Extremum::Max => half_seat_max(&q),
            // The lower end is the mirror image of the upper end at 1 − V.
            Extremum::Min => half_seat_max(&q.swapped()).swapped(),
        }
    } else {
        match which {
            Extremum::Max => majority_max(&q),
            Extremum::Min => majority_min(&q),
        }
    };
    Ok(restore(plan, mirrored))
}

fn half_seat_max(p: &SvPair) -> ConstructionPlan {
    let n = p.n() as i64;
    let half_n = p.n() / 2;
    let v = p.v().clone();
    let h = half();
    let zero = int(0);
    if v < ratio(1, 4) + ratio(1, 2 * n) {
        let top_loser = int(n) * &v - ratio(n, 4);
        let mut plan = ConstructionPlan::new("S = 1/2, max: top loser carries the surplus, winners at 1/2");
        plan.add(zero, half_n - 1, Role::Loser).add(top_loser.clone(), 1, Role::Loser).add(h, half_n, Role::Winner);
        plan.with(|c| c.p = Some(top_loser))
    } else if v <= ratio(n + 1, 2 * n) {
        let winners = &v * int(2) - ratio(1, n);
        let mut plan = ConstructionPlan::new("S = 1/2, max: top loser at 1/2, winners level");
        plan.add(zero, half_n - 1, Role::Loser).add(h.clone(), 1, Role::Loser).add(winners.clone(), half_n, Role::Winner);
        plan.with(|c| c.p = Some(winners))
    } else {
        let rest = (int(n) * &v - int(half_n as i64) - &h) / int(half_n as i64 - 1);
        let mut plan = ConstructionPlan::new("S = 1/2, max: winners at 1, top loser at 1/2");
        plan.add(rest.clone(), half_n - 1, Role::Loser).add(h, 1, Role::Loser).add(int(1), half_n, Role::Winner);
        plan.with(|c| c.p = Some(rest))
    }
}

/// S > ½, largest median: the top ⌊n/2⌋ + 1 districts share one value.
fn majority_max(p: &SvPair) -> ConstructionPlan {
    let n = p.n();
    let l = p.lost();
    let v = p.v().clone();
    let h = half();
    let one = Rational::one();
    let top = n / 2 + 1;
    let low_winners = n - top - l;
    let top_share = mm_max_median(&v, &p.s(), n as i64);
    if top_share <= one {
        let mut plan = ConstructionPlan::new("S > 1/2, max: losers at 0, low winners at 1/2, top block level");
        plan.add(int(0), l, Role::Loser).add(h, low_winners, Role::Winner).add(top_share.clone(), top, Role::Winner);
        return plan.with(|c| c.p = Some(top_share));
    }
    // Top block capped at 1; spread what is left over the lower districts,
    // raising winners from 1/2 first and then losers from 0.
    let mut extra = int(n as i64) * &v - int(top as i64) - int(low_winners as i64) * &h;
    let winner_room = int(low_winners as i64) * &h;
    let winner_lift = min_of(&extra, &winner_room);
    extra -= &winner_lift;
    let winner_share = if low_winners > 0 { &h + &winner_lift / int(low_winners as i64) } else { h.clone() };
    let loser_share = if l > 0 { extra / int(l as i64) } else { int(0) };
    let mut plan = ConstructionPlan::new("S > 1/2, max: top block at 1, remaining mass spread below");
    plan.add(loser_share, l, Role::Loser).add(winner_share, low_winners, Role::Winner).add(one.clone(), top, Role::Winner);
    plan.with(|c| c.p = Some(one))
}

/// S > ½, smallest median.
fn majority_min(p: &SvPair) -> ConstructionPlan {
    let n = p.n();
    let l = p.lost();
    let w = p.won();
    let v = p.v().clone();
    let h = half();
    let nv = int(n as i64) * &v;
    if mm_min_is_flat(&v, n as i64) {
        if v <= h && l == 0 {
            // S = 1 forces V = ½: every district at ½⁺.
            let mut plan = ConstructionPlan::new("S = 1, V = 1/2: every district at 1/2");
            plan.add(h, w, Role::Winner);
            return plan;
        }
        if v <= h {
            let floor = (&nv - int(w as i64) * &h) / int(l as i64);
            let mut plan = ConstructionPlan::new("S > 1/2, min: winners at 1/2, losers level");
            plan.add(floor.clone(), l, Role::Loser).add(h, w, Role::Winner);
            return plan.with(|c| c.p = Some(floor));
        }
        // Everything up to the median sits at 1/2; the rest is level above.
        let at_half = n / 2 + 1;
        let rest = n - at_half;
        let top = (&nv - int(at_half as i64) * &h) / int(rest as i64);
        let mut plan = ConstructionPlan::new("S > 1/2, min: districts through the median at 1/2, the rest level");
        plan.add(h.clone(), l, Role::Loser).add(h, at_half - l, Role::Winner).add(top.clone(), rest, Role::Winner);
        return plan.with(|c| c.p = Some(top));
    }
    // Large V: the top (n − 1)/2 at 1 (n/2 − 1 for even n), median block level.
    let top = if n.is_multiple_of(2) { n / 2 - 1 } else { (n - 1) / 2 };
    let middle = w - top;
    let median = (&nv - int(l as i64) * &h - int(top as i64)) / int(middle as i64);
    let mut plan = ConstructionPlan::new("S > 1/2, min: losers at 1/2, top districts at 1, median block level");
    plan.add(h, l, Role::Loser).add(median.clone(), middle, Role::Winner).add(int(1), top, Role::Winner);
    plan.with(|c| c.p = Some(median))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::mm_range_fixed;
    use crate::metrics::mean_median;

    #[test]
    fn table_pairs() {
        let p = SvPair::new(ratio(7, 10), &ratio(9, 10), 10).unwrap();
        assert_eq!(mean_median(&construct_mm_extremal(&p, Extremum::Min).unwrap()), ratio(-1, 5));
        let p = SvPair::new(half(), &ratio(6, 10), 10).unwrap();
        assert_eq!(mean_median(&construct_mm_extremal(&p, Extremum::Max).unwrap()), ratio(1, 3));
        let p = SvPair::new(half(), &half(), 2).unwrap();
        assert!(construct_mm_extremal(&p, Extremum::Max).is_err());
    }

    #[test]
    fn endpoints_hit_on_small_grid() {
        for n in 3..=10usize {
            for w in 0..=n {
                for j in 0..=20 {
                    let Ok(p) = SvPair::new(ratio(j, 20), &ratio(w as i64, n as i64), n) else { continue };
                    let Ok(range) = mm_range_fixed(&p) else { continue };
                    for (which, target) in [(Extremum::Min, range.lo()), (Extremum::Max, range.hi())] {
                        let e = construct_mm_extremal(&p, which).unwrap();
                        assert_eq!(e.vote_share(), *p.v(), "{p:?} {which:?}");
                        assert_eq!(e.seats_won(), w, "{p:?} {which:?}");
                        assert_eq!(mean_median(&e), *target, "{p:?} {which:?}");
                    }
                }
            }
        }
    }
}
