// Elections at the ends of the fixed-n PB range.

use num_traits::{One, Zero};

use super::{choose_epsilon, orient, restore, ConstructionPlan, ConstructorError, Extremum, Role};
use crate::bounds::{pb_max_extra, pb_min_layout};
use crate::election::{Election, SvPair};
use crate::rational::{half, int, min_of, Rational};

pub fn construct_pb_extremal(p: &SvPair, which: Extremum) -> Result<Election, ConstructorError> {
    plan_pb_extremal(p, which)?.compile()
}

/// Layout whose PB equals the requested end of `pb_range_fixed(p)`.
pub fn plan_pb_extremal(p: &SvPair, which: Extremum) -> Result<ConstructionPlan, ConstructorError> {
    let (q, mirrored) = orient(p)?;
    let which = if mirrored { which.flipped() } else { which };
    Ok(restore(oriented(&q, which), mirrored))
}

fn oriented(p: &SvPair, which: Extremum) -> ConstructionPlan {
    let n = p.n();
    let w = p.won();
    let l = p.lost();
    let v = p.v().clone();
    let h = half();
    let one = Rational::one();

    if n == 1 || v.is_one() || (l == 0 && v == h) {
        let mut plan = ConstructionPlan::new("forced");
        plan.add(v, w, Role::Winner).add(p.v().clone(), l, Role::Loser);
        return plan;
    }

    if v == h {
        // Districts at the mean count on neither side; shift the rest by ε.
        let mut plan;
        let eps;
        match which {
            Extremum::Max => {
                eps = choose_epsilon(&h, n, w as i64).expect("positive slack");
                plan = ConstructionPlan::new("V = 1/2, max: one loser absorbs the winners' surplus");
                plan.add(&h - int(w as i64) * &eps, 1, Role::Loser)
                    .add(h.clone(), l - 1, Role::Loser)
                    .add(&h + &eps, w, Role::Winner);
            }
            Extremum::Min => {
                eps = choose_epsilon(&h, n, l as i64).expect("positive slack");
                plan = ConstructionPlan::new("V = 1/2, min: one winner absorbs the losers' deficit");
                plan.add(&h - &eps, l, Role::Loser)
                    .add(h.clone(), w - 1, Role::Winner)
                    .add(&h + int(l as i64) * &eps, 1, Role::Winner);
            }
        }
        return plan.with(|c| c.epsilon = Some(eps));
    }

    if v < h {
        let slack_total = int(n as i64) * &v - int(w as i64) / int(2);
        return match which {
            Extremum::Min => {
                let floor = &slack_total / int(l as i64);
                let mut plan = ConstructionPlan::new("V < 1/2, min: winners at 1/2, losers level below the mean");
                plan.add(floor.clone(), l, Role::Loser).add(h, w, Role::Winner);
                plan.with(|c| c.p = Some(floor))
            }
            Extremum::Max => {
                let t = pb_max_extra(p);
                if t == 1 {
                    let mut plan = ConstructionPlan::new("V < 1/2, max: one loser exactly at the mean");
                    plan.add(int(0), l - 1, Role::Loser).add(v, 1, Role::Loser).add(h, w, Role::Winner);
                    return plan.with(|c| c.k = Some(0));
                }
                let k = t / 2;
                let mut plan = ConstructionPlan::new("V < 1/2, max: k losers just above the mean");
                if k == 0 {
                    // Losers at 0 stay below the mean; winners share the slack.
                    let delta = if w > 0 { &slack_total / int(w as i64) } else { Rational::zero() };
                    plan.add(int(0), l, Role::Loser).add(&h + &delta, w, Role::Winner);
                    return plan.with(|c| {
                        c.k = Some(0);
                        c.delta = Some(delta);
                    });
                }
                // Room left once k losers sit at V: R − kV.
                let room = &slack_total - int(k) * &v;
                let eps = choose_epsilon(&min_of(&room, &(&h - &v)), n, k).expect("positive slack");
                let delta = (&room - int(k) * &eps) / int(w as i64);
                plan.add(int(0), l - k as usize, Role::Loser)
                    .add(&v + &eps, k as usize, Role::Loser)
                    .add(&h + &delta, w, Role::Winner);
                plan.with(|c| {
                    c.k = Some(k);
                    c.epsilon = Some(eps);
                    c.delta = Some(delta);
                })
            }
        };
    }

    if l == 0 {
        // ½ < V < 1 with a sweep: one district moves far, the others by ε.
        let slack = min_of(&(&v - &h), &(&one - &v));
        let eps = choose_epsilon(&slack, n, n as i64 - 1).expect("positive slack");
        let far = int(n as i64 - 1) * &eps;
        let mut plan = match which {
            Extremum::Max => {
                let mut plan = ConstructionPlan::new("S = 1, max: one winner far below the mean");
                plan.add(&v - &far, 1, Role::Winner).add(&v + &eps, n - 1, Role::Winner);
                plan
            }
            Extremum::Min => {
                let mut plan = ConstructionPlan::new("S = 1, min: one winner far above the mean");
                plan.add(&v - &eps, n - 1, Role::Winner).add(&v + &far, 1, Role::Winner);
                plan
            }
        };
        plan.chosen.epsilon = Some(eps);
        return plan;
    }

    match which {
        Extremum::Max => {
            let top = (int(n as i64) * &v - int(l as i64) / int(2)) / int(w as i64);
            let mut plan = ConstructionPlan::new("V > 1/2, max: losers at 1/2, winners level above the mean");
            plan.add(h, l, Role::Loser).add(top.clone(), w, Role::Winner);
            plan.with(|c| c.p = Some(top))
        }
        Extremum::Min => {
            let (above, at_mean) = pb_min_layout(p);
            let above_u = above as usize;
            if at_mean > 0 {
                let mut plan = ConstructionPlan::new("V > 1/2, min: top winners at 1, the rest exactly at the mean");
                plan.add(h, l, Role::Loser).add(v, at_mean as usize, Role::Winner).add(one, above_u, Role::Winner);
                return plan.with(|c| c.k = Some(above));
            }
            let below = w - above_u;
            // Surplus of placing `above` winners at 1 and the rest at V.
            let surplus = int(above) * (&one - &v) - int(l as i64) * (&v - &h);
            let (eps, delta) = if below == 0 {
                (None, &surplus / int(l as i64))
            } else {
                let eps = choose_epsilon(&min_of(&surplus, &(&v - &h)), n, below as i64).expect("positive slack");
                let delta = (&surplus - int(below as i64) * &eps) / int(l as i64);
                (Some(eps), delta)
            };
            let mut plan = ConstructionPlan::new("V > 1/2, min: a winners at 1, b just below the mean, losers below 1/2");
            plan.add(&h - &delta, l, Role::Loser)
                .add(&v - eps.clone().unwrap_or_else(Rational::zero), below, Role::Winner)
                .add(one, above_u, Role::Winner);
            plan.with(|c| {
                c.k = Some(above);
                c.epsilon = eps;
                c.delta = Some(delta);
                c.gamma = Some(Rational::zero());
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::pb_range_fixed;
    use crate::metrics::partisan_bias;
    use crate::rational::ratio;

    fn pair(v: Rational, s: Rational, n: usize) -> SvPair {
        SvPair::new(v, &s, n).unwrap()
    }

    #[test]
    fn half_vote_max_example() {
        let p = pair(half(), ratio(9, 10), 10);
        let plan = plan_pb_extremal(&p, Extremum::Max).unwrap();
        assert_eq!(plan.chosen.epsilon, Some(ratio(1, 400)));
        let e = plan.compile().unwrap();
        assert_eq!(partisan_bias(&e), ratio(2, 5));
        let shares: Vec<_> = e.shares().cloned().collect();
        assert_eq!(shares[0], ratio(191, 400));
        assert!(shares[1..].iter().all(|s| *s == ratio(201, 400)));
    }

    #[test]
    fn sweep_and_table_pair() {
        let e = construct_pb_extremal(&pair(int(1), int(1), 6), Extremum::Max).unwrap();
        assert!(e.shares().all(|s| s.is_one()));
        let e = construct_pb_extremal(&pair(ratio(6, 10), ratio(9, 10), 10), Extremum::Min).unwrap();
        assert_eq!(partisan_bias(&e), ratio(-2, 5));
    }

    #[test]
    fn endpoints_hit_on_small_grid() {
        for n in 1..=10usize {
            for w in 0..=n {
                for j in 0..=20 {
                    let v = ratio(j, 20);
                    let Ok(p) = SvPair::new(v, &ratio(w as i64, n as i64), n) else { continue };
                    let Ok(range) = pb_range_fixed(&p) else { continue };
                    for (which, target) in [(Extremum::Min, range.lo()), (Extremum::Max, range.hi())] {
                        let e = construct_pb_extremal(&p, which).unwrap();
                        assert_eq!(e.vote_share(), *p.v(), "{p:?} {which:?}");
                        assert_eq!(e.seats_won(), w, "{p:?} {which:?}");
                        assert_eq!(partisan_bias(&e), *target, "{p:?} {which:?}");
                    }
                }
            }
        }
    }
}
