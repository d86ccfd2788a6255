use num_traits::Signed;

use partisan_symmetry::bounds::{mm_range_fixed, mm_range_limit, pb_range_fixed, pb_range_limit};
use partisan_symmetry::election::SvPair;
use partisan_symmetry::rational::{ratio, Rational};

fn lo_gap_mm(v: &Rational, s: &Rational, n: usize) -> Rational {
    let fixed = mm_range_fixed(&SvPair::new(v.clone(), s, n).unwrap()).unwrap();
    (fixed.lo() - mm_range_limit(v, s).unwrap().lo()).abs()
}

#[test]
fn fixed_ranges_sit_inside_the_limit_closure() {
    for n in [10usize, 20, 40] {
        for won in 0..=n {
            for j in 0..=40 {
                let (v, s) = (ratio(j, 40), ratio(won as i64, n as i64));
                let Ok(limit_pb) = pb_range_limit(&v, &s) else { continue };
                let limit_mm = mm_range_limit(&v, &s).unwrap();
                let p = SvPair::new(v.clone(), &s, n).unwrap();
                let (pb, mm) = (pb_range_fixed(&p).unwrap(), mm_range_fixed(&p).unwrap());
                assert!(limit_pb.closure_contains(pb.lo()) && limit_pb.closure_contains(pb.hi()), "PB {p}: {pb} vs {limit_pb}");
                assert!(limit_mm.closure_contains(mm.lo()) && limit_mm.closure_contains(mm.hi()), "MM {p}: {mm} vs {limit_mm}");
            }
        }
    }
}

#[test]
fn mm_lower_end_converges_slowly_next_to_half_seats() {
    // For V ≥ ¾ the fixed-n lower end trails the limit by roughly
    // (S + 1 − 2V)t / ((2S − 1)(2S − 1 + t)) with t = 2/n, which is above 2/n
    // when S is close to ½.
    let (v, s) = (ratio(3, 4), ratio(3, 5));
    let gaps: Vec<Rational> = [10usize, 100, 1000].iter().map(|&n| lo_gap_mm(&v, &s, n)).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "gaps shrink with n");
    assert!(gaps[1] > ratio(2, 100), "n = 100 gap is beyond 2/n");
    assert!(gaps[2] < ratio(1, 100));
    // Away from S = ½ the same endpoint is within 2/n.
    assert!(lo_gap_mm(&v, &ratio(9, 10), 100) <= ratio(2, 100));
}
