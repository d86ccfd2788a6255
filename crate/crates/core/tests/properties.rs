use num_traits::{One, Zero};
use proptest::prelude::*;

use partisan_symmetry::bounds::{
    mm_range_fixed, mm_range_limit, pb_range_fixed, pb_range_limit, zero_achievable_at, zero_region_contains,
    zero_region_turnout,
};
use partisan_symmetry::constructors::{
    construct_mm_extremal, construct_mm_value, construct_pb_extremal, construct_pb_value, construct_zero,
    construct_zero_turnout, Extremum,
};
use partisan_symmetry::election::{DistrictResult, Election, SvPair, Turnout};
use partisan_symmetry::metrics::{
    mean_median, mm_from_curve, partisan_bias, pb_from_curve, seats_votes_curve, sign_consistency,
};
use partisan_symmetry::rational::{int, ratio, Rational};

/// Equal-turnout elections on the 1/100 grid; ½-share districts get a random flag.
fn election() -> impl Strategy<Value = Election> {
    prop::collection::vec((0i64..=100, any::<bool>()), 1..=15).prop_map(|ds| {
        let districts = ds
            .into_iter()
            .map(|(x, won)| DistrictResult::new(ratio(x, 100), (x == 50).then_some(won)).unwrap())
            .collect();
        Election::new(districts, None).unwrap()
    })
}

/// Feasible (V, S, n) pairs with V on the 1/40 grid.
fn pair(min_n: usize) -> impl Strategy<Value = SvPair> {
    (min_n..=12usize, 0i64..=40, 0usize..=12)
        .prop_filter_map("infeasible", |(n, j, w)| {
            let p = SvPair::new(ratio(j, 40), &ratio((w % (n + 1)) as i64, n as i64), n).ok()?;
            p.is_feasible(Turnout::Equal).then_some(p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mm_and_pb_signs_agree(e in election()) {
        prop_assert!(sign_consistency(&e), "{}", e);
    }

    #[test]
    fn curve_readings_equal_direct_metrics(e in election()) {
        let c = seats_votes_curve(&e).unwrap();
        prop_assert_eq!(mm_from_curve(&c), mean_median(&e));
        prop_assert_eq!(pb_from_curve(&c), partisan_bias(&e));
    }

    #[test]
    fn party_swap_negates_metrics(e in election()) {
        let s = e.swapped();
        prop_assert_eq!(mean_median(&s), -mean_median(&e));
        prop_assert_eq!(partisan_bias(&s), -partisan_bias(&e));
        prop_assert_eq!(s.vote_share(), Rational::one() - e.vote_share());
    }

    #[test]
    fn observed_metrics_lie_in_their_ranges(e in election()) {
        let p = e.seat_share();
        let (mm, pb) = (mean_median(&e), partisan_bias(&e));
        prop_assert!(pb_range_fixed(&p).unwrap().contains(&pb), "PB {} at {}", pb, p);
        prop_assert!(pb_range_limit(p.v(), &p.s()).unwrap().contains(&pb), "PB {} at {}", pb, p);
        prop_assert!(mm_range_limit(p.v(), &p.s()).unwrap().contains(&mm), "MM {} at {}", mm, p);
        if p.n() >= 3 {
            prop_assert!(mm_range_fixed(&p).unwrap().contains(&mm), "MM {} at {}", mm, p);
        }
        if mm.is_zero() {
            prop_assert!(zero_achievable_at(&p));
            prop_assert!(zero_region_contains(p.v(), &p.s()));
        }
    }

    #[test]
    fn extremal_witnesses_hit_closed_endpoints(p in pair(3)) {
        let ranges = [("pb", pb_range_fixed(&p).unwrap()), ("mm", mm_range_fixed(&p).unwrap())];
        for (metric, range) in ranges {
            for (which, end, closed) in [(Extremum::Min, range.lo(), range.lo_closed()), (Extremum::Max, range.hi(), range.hi_closed())] {
                let e = if metric == "pb" { construct_pb_extremal(&p, which) } else { construct_mm_extremal(&p, which) };
                let e = e.unwrap();
                prop_assert_eq!(e.vote_share(), p.v().clone());
                prop_assert_eq!(e.seats_won(), p.won());
                prop_assert_eq!(e.len(), p.n());
                let got = if metric == "pb" { partisan_bias(&e) } else { mean_median(&e) };
                if closed {
                    prop_assert_eq!(&got, end, "{} {:?} at {}", metric, which, p);
                } else {
                    prop_assert!(range.contains(&got));
                }
            }
        }
    }

    #[test]
    fn value_witnesses_hit_interior_targets(p in pair(3), t in 1i64..100) {
        let t = ratio(t, 100);
        let mm = mm_range_fixed(&p).unwrap();
        let target = mm.lo() + (mm.hi() - mm.lo()) * &t;
        if mm.contains(&target) {
            let e = construct_mm_value(&p, &target).unwrap();
            prop_assert_eq!(mean_median(&e), target);
            prop_assert_eq!(e.vote_share(), p.v().clone());
            prop_assert_eq!(e.seats_won(), p.won());
        }
        let pb = pb_range_fixed(&p).unwrap();
        let steps = (pb.hi() - pb.lo()) * int(p.n() as i64);
        let k = (steps * &t).floor();
        let target = pb.lo() + k / int(p.n() as i64);
        if pb.contains(&target) {
            let e = construct_pb_value(&p, &target).unwrap();
            prop_assert_eq!(partisan_bias(&e), target);
            prop_assert_eq!(e.vote_share(), p.v().clone());
            prop_assert_eq!(e.seats_won(), p.won());
        }
    }

    #[test]
    fn zero_witnesses_exist_exactly_in_the_region(p in pair(1)) {
        let (v, s) = (p.v().clone(), p.s());
        match construct_zero(&p) {
            Ok(e) => {
                prop_assert!(zero_region_contains(&v, &s));
                prop_assert!(mean_median(&e).is_zero() && partisan_bias(&e).is_zero());
                prop_assert_eq!(e.vote_share(), v);
                prop_assert_eq!(e.seat_share().s(), s);
            }
            Err(_) => prop_assert!(!zero_region_contains(&v, &s)),
        }
    }

    #[test]
    fn turnout_witnesses_fill_the_band(won in 5i64..=9, c in 1i64..=20, t in 1i64..100) {
        let (s, c) = (ratio(won, 10), int(c));
        let band = zero_region_turnout(&s, &c).unwrap();
        let v = &band.v_lo + (&band.v_hi - &band.v_lo) * ratio(t, 100);
        let e = construct_zero_turnout(&v, &s, &c).unwrap();
        prop_assert!(mean_median(&e).is_zero() && partisan_bias(&e).is_zero());
        prop_assert_eq!(e.vote_share(), v);
        prop_assert_eq!(e.seat_share().s(), s);
        if let Some(w) = e.weights() {
            let (lo, hi) = (w.iter().min().unwrap(), w.iter().max().unwrap());
            prop_assert!(hi / lo <= c);
        }
    }
}
