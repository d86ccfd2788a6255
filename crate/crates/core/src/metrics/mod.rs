//! Partisan-symmetry metrics on a single election.
//!
//! MM and PB read the raw district shares and ignore turnout weights.
//! The efficiency gap uses the equal-turnout closed form and therefore
//! refuses weighted elections.

mod curve;
mod declination;

use num_traits::{Signed, Zero};

use crate::election::Election;
use crate::rational::{half, int, Rational};

pub use curve::{mm_from_curve, pb_from_curve, seats_votes_curve, SeatsVotesCurve};
pub use declination::{atan, pi, DECLINATION_DIGITS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("{0} assumes equal turnout, but this election carries unequal turnout weights")]
    UnequalTurnout(&'static str),
}

/// A metric value that may be undefined (declination with a one-party sweep).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricValue {
    value: Option<Rational>,
}

impl MetricValue {
    pub fn defined(value: Rational) -> Self {
        Self { value: Some(value) }
    }

    pub fn undefined() -> Self {
        Self { value: None }
    }

    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }

    pub fn value(&self) -> Option<&Rational> {
        self.value.as_ref()
    }
}

/// Median district share; the average of the two middle shares for even n.
pub fn median(e: &Election) -> Rational {
    let d = e.districts();
    let n = d.len();
    if n % 2 == 1 {
        d[n / 2].share().clone()
    } else {
        (d[n / 2 - 1].share() + d[n / 2].share()) / int(2)
    }
}

/// Mean-median difference: median share minus mean share.
pub fn mean_median(e: &Election) -> Rational {
    median(e) - e.mean_share()
}

/// Partisan bias: half the gap between the fractions of districts strictly
/// above and strictly below the mean share.
pub fn partisan_bias(e: &Election) -> Rational {
    let mean = e.mean_share();
    let (mut above, mut below) = (0i64, 0i64);
    for s in e.shares() {
        if *s > mean {
            above += 1;
        } else if *s < mean {
            below += 1;
        }
    }
    Rational::new((above - below).into(), (2 * e.len() as i64).into())
}

/// Efficiency gap in its equal-turnout form S − 2V + ½.
pub fn efficiency_gap(e: &Election) -> Result<Rational, MetricsError> {
    if !e.has_equal_turnout() {
        return Err(MetricsError::UnequalTurnout("the efficiency gap"));
    }
    let pair = e.seat_share();
    Ok(pair.s() - pair.v() * int(2) + half())
}

/// Declination, approximated to [`DECLINATION_DIGITS`] decimal digits.
/// Undefined when one party wins every district.
pub fn declination(e: &Election) -> MetricValue {
    declination::declination(e)
}

/// MM and PB never have strictly opposite signs, and MM = 0 forces PB = 0.
pub fn sign_consistency(e: &Election) -> bool {
    let mm = mean_median(e);
    let pb = partisan_bias(e);
    let opposite = (mm.is_positive() && pb.is_negative()) || (mm.is_negative() && pb.is_positive());
    !opposite && (!mm.is_zero() || pb.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::DistrictResult;
    use crate::rational::ratio;

    fn pct(values: &[i64]) -> Election {
        Election::from_fractions(values, 100).unwrap()
    }

    #[test]
    fn fig2_values() {
        let e = pct(&[20, 30, 55, 60, 65]);
        assert_eq!(mean_median(&e), ratio(9, 100));
        assert_eq!(partisan_bias(&e), ratio(1, 10));
    }

    #[test]
    fn symmetric_and_constant_elections() {
        let d = |k| DistrictResult::decided(ratio(k, 10)).unwrap();
        let e = Election::new(vec![d(4), DistrictResult::half_won(), d(6)], None).unwrap();
        assert_eq!(partisan_bias(&e), int(0));
        assert_eq!(partisan_bias(&e.swapped()), int(0));
        let c = pct(&[37, 37, 37]);
        assert_eq!(mean_median(&c), int(0));
        assert_eq!(partisan_bias(&c), int(0));
    }

    #[test]
    fn table_values() {
        let e = Election::from_shares(
            std::iter::repeat_n(ratio(47, 100), 5)
                .chain([ratio(51, 100)])
                .chain(std::iter::repeat_n(ratio(748, 1000), 5)),
        )
        .unwrap();
        assert_eq!(mean_median(&e), ratio(-9, 100));
        let mut t3 = vec![49];
        t3.extend([59; 8]);
        t3.push(79);
        assert_eq!(partisan_bias(&pct(&t3)), ratio(-2, 5));
    }

    #[test]
    fn efficiency_gap_examples() {
        let mut t3 = vec![37];
        t3.extend([61; 8]);
        t3.push(75);
        assert_eq!(efficiency_gap(&pct(&t3)).unwrap(), ratio(1, 5));
        assert_eq!(efficiency_gap(&pct(&[40, 60])).unwrap(), int(0));
        assert_eq!(efficiency_gap(&pct(&[60, 90])).unwrap(), int(0));
        let weighted = Election::new(
            vec![DistrictResult::decided(ratio(1, 3)).unwrap(), DistrictResult::decided(ratio(2, 3)).unwrap()],
            Some(vec![ratio(1, 3), ratio(2, 3)]),
        )
        .unwrap();
        assert!(efficiency_gap(&weighted).is_err());
    }

    #[test]
    fn sign_witness_from_text() {
        let e = pct(&[55, 60, 70, 90]);
        assert_eq!(mean_median(&e), ratio(-3, 80));
        assert_eq!(partisan_bias(&e), int(0));
        assert!(sign_consistency(&e));
    }

    #[test]
    fn declination_cases() {
        assert!(!declination(&pct(&[60, 70])).is_defined());
        assert_eq!(declination(&pct(&[40, 60])).value(), Some(&int(0)));
        assert_eq!(declination(&pct(&[30, 45, 55, 70])).value(), Some(&int(0)));
        let skewed = declination(&pct(&[20, 30, 55, 60, 65]));
        assert!(skewed.value().unwrap().is_positive() || skewed.value().unwrap().is_negative());
    }
}
