use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::MetricsError;
use crate::election::Election;
use crate::rational::{half, int, max_of, min_of, ratio, Rational};

/// Seats-votes staircase under uniform partisan swing.
///
/// Each district flips at the swung statewide share V' = V̄ + ½ − Vᵢ.
/// The curve is stored as the corner points of the staircase: every riser
/// contributes its bottom and top corner, and the ends are extended to
/// V' = 0 and V' = 1 when all flips fall inside that range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeatsVotesCurve {
    n: usize,
    points: Vec<(Rational, Rational)>,
}

struct Riser<'a> {
    at: &'a Rational,
    from: &'a Rational,
    to: &'a Rational,
}

impl SeatsVotesCurve {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Corner points `(v, s)` in drawing order.
    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    fn risers(&self) -> impl Iterator<Item = Riser<'_>> {
        self.points[1..self.points.len() - 1]
            .chunks(2)
            .map(|pair| Riser { at: &pair[0].0, from: &pair[0].1, to: &pair[1].1 })
    }

    /// Seat share just left and just right of `v` (equal off the risers).
    pub fn height_at(&self, v: &Rational) -> (Rational, Rational) {
        let mut level = Rational::zero();
        for r in self.risers() {
            if r.at < v {
                level = r.to.clone();
            } else if r.at == v {
                return (r.from.clone(), r.to.clone());
            } else {
                break;
            }
        }
        (level.clone(), level)
    }

    /// Swung vote share where the staircase meets S = ½ (midpoint of the
    /// plateau when n is even and the curve rests on S = ½).
    pub fn half_seat_crossing(&self) -> Rational {
        let h = half();
        let risers: Vec<_> = self.risers().collect();
        for (i, r) in risers.iter().enumerate() {
            if *r.from < h && *r.to > h {
                return r.at.clone();
            }
            if *r.to == h {
                let next = risers[i + 1].at;
                return (r.at + next) / int(2);
            }
        }
        unreachable!("a staircase from 0 to 1 meets S = 1/2")
    }
}

/// Build the uniform-swing seats-votes curve of an equal-turnout election.
pub fn seats_votes_curve(e: &Election) -> Result<SeatsVotesCurve, MetricsError> {
    if !e.has_equal_turnout() {
        return Err(MetricsError::UnequalTurnout("the uniform-swing seats-votes curve"));
    }
    let n = e.len();
    let pivot = e.mean_share() + half();
    let mut flips: BTreeMap<Rational, i64> = BTreeMap::new();
    for s in e.shares() {
        *flips.entry(&pivot - s).or_default() += 1;
    }
    let first = flips.keys().next().expect("non-empty election").clone();
    let last = flips.keys().next_back().expect("non-empty election").clone();
    let mut points = vec![(min_of(&Rational::zero(), &first), Rational::zero())];
    let mut seats = 0i64;
    for (at, count) in flips {
        points.push((at.clone(), ratio(seats, n as i64)));
        seats += count;
        points.push((at, ratio(seats, n as i64)));
    }
    points.push((max_of(&Rational::one(), &last), Rational::one()));
    Ok(SeatsVotesCurve { n, points })
}

/// MM read off the curve: ½ minus the swung share where S reaches ½.
pub fn mm_from_curve(c: &SeatsVotesCurve) -> Rational {
    half() - c.half_seat_crossing()
}

/// PB read off the curve: seat share at V' = ½ minus ½ (riser midpoint when a
/// flip lands exactly on ½).
pub fn pb_from_curve(c: &SeatsVotesCurve) -> Rational {
    let (below, above) = c.height_at(&half());
    (below + above) / int(2) - half()
}
