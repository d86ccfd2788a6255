//! Districted election data and the statewide quantities derived from it.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{half, int, is_half, ratio, Exact, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElectionError {
    #[error("an election needs at least one district")]
    Empty,
    #[error("district {index}: share {share} is outside [0, 1]")]
    ShareOutOfRange { index: usize, share: String },
    #[error("district {index}: share is exactly 1/2 but carries no winner flag")]
    MissingTieFlag { index: usize },
    #[error("district {index}: winner flag given but share {share} is not 1/2")]
    StrayTieFlag { index: usize, share: String },
    #[error("{weights} turnout weights for {districts} districts")]
    WeightCount { weights: usize, districts: usize },
    #[error("turnout weight {index} is not positive")]
    NonPositiveWeight { index: usize },
    #[error("turnout weights sum to {0}, not 1")]
    WeightSum(String),
}

/// Party A's share in one district, with the ½⁺/½⁻ flag for exact ties.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistrictResult {
    share: Rational,
    winner_at_half: Option<bool>,
}

impl DistrictResult {
    pub fn new(share: Rational, winner_at_half: Option<bool>) -> Result<Self, ElectionError> {
        Self::checked(share, winner_at_half, 0)
    }

    /// A district whose share is not exactly ½.
    pub fn decided(share: Rational) -> Result<Self, ElectionError> {
        Self::checked(share, None, 0)
    }

    /// ½⁺: a tie won by party A.
    pub fn half_won() -> Self {
        Self { share: half(), winner_at_half: Some(true) }
    }

    /// ½⁻: a tie lost by party A.
    pub fn half_lost() -> Self {
        Self { share: half(), winner_at_half: Some(false) }
    }

    /// Share with the flag filled in from `won` when the share is ½.
    pub fn with_outcome(share: Rational, won: bool) -> Result<Self, ElectionError> {
        let flag = is_half(&share).then_some(won);
        Self::checked(share, flag, 0)
    }

    fn checked(share: Rational, winner_at_half: Option<bool>, index: usize) -> Result<Self, ElectionError> {
        if share < Rational::zero() || share > Rational::one() {
            return Err(ElectionError::ShareOutOfRange { index, share: Exact(&share).to_string() });
        }
        match (is_half(&share), winner_at_half) {
            (true, None) => Err(ElectionError::MissingTieFlag { index }),
            (false, Some(_)) => Err(ElectionError::StrayTieFlag { index, share: Exact(&share).to_string() }),
            _ => Ok(Self { share, winner_at_half }),
        }
    }

    pub fn share(&self) -> &Rational {
        &self.share
    }

    pub fn winner_at_half(&self) -> Option<bool> {
        self.winner_at_half
    }

    pub fn is_won(&self) -> bool {
        match self.winner_at_half {
            Some(flag) => flag,
            None => self.share > half(),
        }
    }

    /// The same district seen from party B.
    pub fn swapped(&self) -> Self {
        Self { share: Rational::one() - &self.share, winner_at_half: self.winner_at_half.map(|w| !w) }
    }

    fn storage_order(&self, other: &Self) -> Ordering {
        self.share.cmp(&other.share).then(self.is_won().cmp(&other.is_won()))
    }
}

impl fmt::Display for DistrictResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.winner_at_half {
            Some(true) => f.write_str("1/2+"),
            Some(false) => f.write_str("1/2-"),
            None => write!(f, "{}", Exact(&self.share)),
        }
    }
}

/// District results stored ascending by share (½⁻ before ½⁺), with
/// optional turnout weights aligned to that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    districts: Vec<DistrictResult>,
    weights: Option<Vec<Rational>>,
}

impl Election {
    pub fn new(districts: Vec<DistrictResult>, weights: Option<Vec<Rational>>) -> Result<Self, ElectionError> {
        if districts.is_empty() {
            return Err(ElectionError::Empty);
        }
        if let Some(w) = &weights {
            if w.len() != districts.len() {
                return Err(ElectionError::WeightCount { weights: w.len(), districts: districts.len() });
            }
            if let Some(index) = w.iter().position(|x| *x <= Rational::zero()) {
                return Err(ElectionError::NonPositiveWeight { index });
            }
            let total: Rational = w.iter().sum();
            if !total.is_one() {
                return Err(ElectionError::WeightSum(Exact(&total).to_string()));
            }
        }
        let mut order: Vec<usize> = (0..districts.len()).collect();
        order.sort_by(|&a, &b| districts[a].storage_order(&districts[b]));
        let weights = weights.map(|w| order.iter().map(|&i| w[i].clone()).collect());
        let districts = order.into_iter().map(|i| districts[i].clone()).collect();
        Ok(Self { districts, weights })
    }

    /// Equal-turnout election from shares none of which is exactly ½.
    pub fn from_shares<I: IntoIterator<Item = Rational>>(shares: I) -> Result<Self, ElectionError> {
        let districts = shares
            .into_iter()
            .enumerate()
            .map(|(index, s)| DistrictResult::checked(s, None, index))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(districts, None)
    }

    /// Equal-turnout election from percentages given as integers over `den`.
    pub fn from_fractions(numerators: &[i64], den: i64) -> Result<Self, ElectionError> {
        Self::from_shares(numerators.iter().map(|&k| ratio(k, den)))
    }

    pub fn districts(&self) -> &[DistrictResult] {
        &self.districts
    }

    pub fn shares(&self) -> impl ExactSizeIterator<Item = &Rational> + '_ {
        self.districts.iter().map(DistrictResult::share)
    }

    pub fn len(&self) -> usize {
        self.districts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.districts.is_empty()
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    /// True when no weights are attached or all of them are equal.
    pub fn has_equal_turnout(&self) -> bool {
        match &self.weights {
            None => true,
            Some(w) => w.iter().all(|x| *x == w[0]),
        }
    }

    /// Unweighted mean of the district shares.
    pub fn mean_share(&self) -> Rational {
        let total: Rational = self.shares().sum();
        total / int(self.len() as i64)
    }

    /// Statewide vote share: Σ αᵢVᵢ, with αᵢ = 1/n when no weights are given.
    pub fn vote_share(&self) -> Rational {
        match &self.weights {
            None => self.mean_share(),
            Some(w) => self.shares().zip(w).map(|(s, a)| s * a).sum(),
        }
    }

    pub fn seats_won(&self) -> usize {
        self.districts.iter().filter(|d| d.is_won()).count()
    }

    pub fn seat_share(&self) -> SvPair {
        let n = self.len();
        SvPair::from_counts(self.vote_share(), n, n - self.seats_won())
            .expect("vote share of a valid election lies in [0, 1]")
    }

    /// Party-swap mirror: every share becomes 1 − share and tie flags flip.
    pub fn swapped(&self) -> Self {
        let districts = self.districts.iter().map(DistrictResult::swapped).collect();
        Self::new(districts, self.weights.clone()).expect("mirror of a valid election is valid")
    }
}

impl fmt::Display for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.districts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turnout {
    Equal,
    Unconstrained,
}

/// Which feasibility constraint a (V, S) pair breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Infeasible {
    #[error("vote share outside [0, 1]")]
    VoteShareRange,
    #[error("seat share outside [0, 1]")]
    SeatShareRange,
    #[error("S <= 2V fails: too many seats for the vote share under equal turnout")]
    TooManySeats,
    #[error("S >= 2V - 1 fails: too few seats for the vote share under equal turnout")]
    TooFewSeats,
    #[error("V = 0 forces S = 0 and V = 1 forces S = 1")]
    ForcedCorner,
}

/// Check a (V, S) pair against the feasible region.
pub fn check_feasible(v: &Rational, s: &Rational, turnout: Turnout) -> Result<(), Infeasible> {
    let zero = Rational::zero();
    let one = Rational::one();
    if *v < zero || *v > one {
        return Err(Infeasible::VoteShareRange);
    }
    if *s < zero || *s > one {
        return Err(Infeasible::SeatShareRange);
    }
    match turnout {
        Turnout::Equal => {
            let two_v = v * int(2);
            if *s > two_v {
                Err(Infeasible::TooManySeats)
            } else if *s < two_v - one {
                Err(Infeasible::TooFewSeats)
            } else {
                Ok(())
            }
        }
        Turnout::Unconstrained => {
            if (v.is_zero() && !s.is_zero()) || (v.is_one() && !s.is_one()) {
                Err(Infeasible::ForcedCorner)
            } else {
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("vote share {0} is outside [0, 1]")]
    VoteShare(String),
    #[error("seat share {s} is not a multiple of 1/{n} in [0, 1]")]
    SeatShare { s: String, n: usize },
    #[error("district count must be positive")]
    NoDistricts,
    #[error("{lost} lost districts out of {n}")]
    LostCount { lost: usize, n: usize },
}

/// A vote-share / seat-share pair at a fixed district count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SvPair {
    v: Rational,
    n: usize,
    lost: usize,
}

impl SvPair {
    pub fn new(v: Rational, s: &Rational, n: usize) -> Result<Self, PairError> {
        if n == 0 {
            return Err(PairError::NoDistricts);
        }
        let won = s * int(n as i64);
        let bad_seats = || PairError::SeatShare { s: Exact(s).to_string(), n };
        if !won.is_integer() || *s < Rational::zero() || *s > Rational::one() {
            return Err(bad_seats());
        }
        let won: usize = crate::rational::as_i64(&won).ok_or_else(bad_seats)? as usize;
        Self::from_counts(v, n, n - won)
    }

    pub fn from_counts(v: Rational, n: usize, lost: usize) -> Result<Self, PairError> {
        if n == 0 {
            return Err(PairError::NoDistricts);
        }
        if lost > n {
            return Err(PairError::LostCount { lost, n });
        }
        if v < Rational::zero() || v > Rational::one() {
            return Err(PairError::VoteShare(Exact(&v).to_string()));
        }
        Ok(Self { v, n, lost })
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn s(&self) -> Rational {
        ratio(self.won() as i64, self.n as i64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// ℓ, the number of districts party A loses.
    pub fn lost(&self) -> usize {
        self.lost
    }

    pub fn won(&self) -> usize {
        self.n - self.lost
    }

    pub fn swapped(&self) -> Self {
        Self { v: Rational::one() - &self.v, n: self.n, lost: self.n - self.lost }
    }

    pub fn check_feasible(&self, turnout: Turnout) -> Result<(), Infeasible> {
        check_feasible(&self.v, &self.s(), turnout)
    }

    pub fn is_feasible(&self, turnout: Turnout) -> bool {
        self.check_feasible(turnout).is_ok()
    }
}

impl fmt::Display for SvPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V={} S={}/{}", Exact(&self.v), self.won(), self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig2_vote_share() {
        let e = Election::from_fractions(&[20, 30, 55, 60, 65], 100).unwrap();
        assert_eq!(e.vote_share(), ratio(46, 100));
    }

    #[test]
    fn weighted_vote_share() {
        let e = Election::new(
            vec![DistrictResult::decided(int(0)).unwrap(), DistrictResult::decided(int(1)).unwrap()],
            Some(vec![ratio(3, 4), ratio(1, 4)]),
        )
        .unwrap();
        assert_eq!(e.vote_share(), ratio(1, 4));
        assert!(!e.has_equal_turnout());
    }

    #[test]
    fn seat_shares_from_tables() {
        let mut t3 = vec![37];
        t3.extend([61; 8]);
        t3.push(75);
        let p = Election::from_fractions(&t3, 100).unwrap().seat_share();
        assert_eq!((p.s(), p.v().clone()), (ratio(9, 10), ratio(6, 10)));

        let ties = Election::new(vec![DistrictResult::half_won(), DistrictResult::half_won()], None).unwrap();
        assert_eq!(ties.seat_share().s(), int(1));

        let mut f3 = vec![49; 19];
        f3.push(89);
        assert_eq!(Election::from_fractions(&f3, 100).unwrap().seat_share().s(), ratio(1, 20));
    }

    #[test]
    fn storage_is_sorted_with_losing_ties_first() {
        let e = Election::new(
            vec![DistrictResult::half_won(), DistrictResult::decided(ratio(1, 3)).unwrap(), DistrictResult::half_lost()],
            Some(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]),
        )
        .unwrap();
        assert_eq!(e.to_string(), "(1/3, 1/2-, 1/2+)");
        assert_eq!(e.weights().unwrap()[2], ratio(1, 2));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(DistrictResult::new(half(), None), Err(ElectionError::MissingTieFlag { index: 0 }));
        assert!(Election::from_shares([ratio(1, 2)]).is_err());
        assert!(Election::from_shares([ratio(3, 2)]).is_err());
        assert!(Election::from_shares(Vec::new()).is_err());
        let d = || DistrictResult::decided(ratio(1, 3)).unwrap();
        assert!(Election::new(vec![d(), d()], Some(vec![ratio(1, 2), ratio(1, 3)])).is_err());
        assert!(Election::new(vec![d(), d()], Some(vec![int(1), int(0)])).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(check_feasible(&ratio(6, 10), &ratio(9, 10), Turnout::Equal).is_ok());
        assert_eq!(check_feasible(&ratio(2, 10), &ratio(9, 10), Turnout::Equal), Err(Infeasible::TooManySeats));
        assert_eq!(check_feasible(&ratio(9, 10), &ratio(1, 2), Turnout::Equal), Err(Infeasible::TooFewSeats));
        assert!(check_feasible(&int(1), &int(1), Turnout::Equal).is_ok());
        assert!(check_feasible(&ratio(2, 10), &ratio(9, 10), Turnout::Unconstrained).is_ok());
        assert!(check_feasible(&int(1), &ratio(1, 2), Turnout::Unconstrained).is_err());
    }

    #[test]
    fn pair_rejects_seat_share_off_denominator() {
        assert!(SvPair::new(ratio(1, 2), &ratio(1, 3), 10).is_err());
        let p = SvPair::new(ratio(6, 10), &ratio(9, 10), 10).unwrap();
        assert_eq!((p.lost(), p.won()), (1, 9));
        assert_eq!(p.swapped().s(), ratio(1, 10));
    }
}
