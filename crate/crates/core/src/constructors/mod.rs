//! Witness elections that realize range endpoints, chosen interior values
//! and zero metric values.
//!
//! Every constructor first builds a [`ConstructionPlan`]: a few buckets of
//! identical districts plus the free parameters (ε, δ, γ, p, k) it solved
//! for. Compiling the plan expands the buckets into an [`Election`]. Pairs
//! with party A below half the seats are built for party B and mirrored.

mod mm;
mod pb;
mod value;
mod zero;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bounds::BoundsError;
use crate::election::{DistrictResult, Election, ElectionError, Infeasible, SvPair};
use crate::rational::{self, half, int, Exact, Rational};

pub use mm::{construct_mm_extremal, plan_mm_extremal};
pub use pb::{construct_pb_extremal, plan_pb_extremal};
pub use value::{construct_mm_value, construct_pb_value, plan_mm_value, plan_pb_value};
pub use zero::{construct_zero, construct_zero_turnout, plan_zero, plan_zero_turnout};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructorError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("infeasible pair: {0}")]
    Infeasible(#[from] Infeasible),
    #[error("({v}, {s}) is outside the zero region")]
    OutsideZeroRegion { v: String, s: String },
    #[error("target V {v} is outside the turnout band [{lo}, {hi})")]
    OutsideBand { v: String, lo: String, hi: String },
    #[error("target {target} is outside the achievable range {range}")]
    TargetOutsideRange { target: String, range: String },
    #[error("no district count up to {0} realizes this target")]
    NoDistrictCount(usize),
    #[error("plan does not compile: {0}")]
    Compile(#[from] ElectionError),
}

/// Which end of a range to realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    pub fn flipped(self) -> Self {
        match self {
            Self::Min => Self::Max,
            Self::Max => Self::Min,
        }
    }
}

impl std::str::FromStr for Extremum {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "min" => Ok(Self::Min),
            "max" => Ok(Self::Max),
            other => Err(format!("expected min or max, got '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TurnoutLevel {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    Loser,
    Winner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bucket {
    #[serde(with = "rational::serde_rational")]
    pub share: Rational,
    pub count: usize,
    pub winner_at_half: Option<bool>,
    pub turnout_level: TurnoutLevel,
}

/// Free parameters a construction solved for; unset ones were not needed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChosenParams {
    #[serde(with = "rational::serde_rational_opt")]
    pub epsilon: Option<Rational>,
    #[serde(with = "rational::serde_rational_opt")]
    pub delta: Option<Rational>,
    #[serde(with = "rational::serde_rational_opt")]
    pub gamma: Option<Rational>,
    #[serde(with = "rational::serde_rational_opt")]
    pub p: Option<Rational>,
    pub k: Option<i64>,
    /// Turnout of high-level districts relative to low-level ones.
    #[serde(with = "rational::serde_rational_opt")]
    pub high_weight: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    /// Short label of the layout used.
    pub case: String,
    pub buckets: Vec<Bucket>,
    pub chosen: ChosenParams,
}

impl ConstructionPlan {
    pub(crate) fn new(case: impl Into<String>) -> Self {
        Self { case: case.into(), buckets: Vec::new(), chosen: ChosenParams::default() }
    }

    /// Add `count` districts at `share`; zero counts are skipped.
    pub(crate) fn add(&mut self, share: Rational, count: usize, role: Role) -> &mut Self {
        self.add_at(share, count, role, TurnoutLevel::Low)
    }

    pub(crate) fn add_at(&mut self, share: Rational, count: usize, role: Role, level: TurnoutLevel) -> &mut Self {
        if count > 0 {
            let winner_at_half = rational::is_half(&share).then_some(role == Role::Winner);
            self.buckets.push(Bucket { share, count, winner_at_half, turnout_level: level });
        }
        self
    }

    pub(crate) fn with(mut self, f: impl FnOnce(&mut ChosenParams)) -> Self {
        f(&mut self.chosen);
        self
    }

    pub fn n(&self) -> usize {
        self.buckets.iter().map(|b| b.count).sum()
    }

    /// The same layout seen from the other party.
    pub fn swapped(&self) -> Self {
        let buckets = self
            .buckets
            .iter()
            .map(|b| Bucket {
                share: Rational::one() - &b.share,
                count: b.count,
                winner_at_half: b.winner_at_half.map(|w| !w),
                turnout_level: b.turnout_level,
            })
            .collect();
        Self { case: format!("{} (mirrored)", self.case), buckets, chosen: self.chosen.clone() }
    }

    pub fn compile(&self) -> Result<Election, ConstructorError> {
        let mut districts = Vec::with_capacity(self.n());
        let mut weights = Vec::with_capacity(self.n());
        let high = self.chosen.high_weight.clone().unwrap_or_else(Rational::one);
        for b in &self.buckets {
            let d = DistrictResult::new(b.share.clone(), b.winner_at_half)?;
            let w = match b.turnout_level {
                TurnoutLevel::Low => Rational::one(),
                TurnoutLevel::High => high.clone(),
            };
            for _ in 0..b.count {
                districts.push(d.clone());
                weights.push(w.clone());
            }
        }
        let weighted = weights.iter().any(|w| !w.is_one());
        let weights = weighted.then(|| {
            let total: Rational = weights.iter().sum();
            weights.into_iter().map(|w| w / &total).collect()
        });
        Ok(Election::new(districts, weights)?)
    }
}

impl fmt::Display for ConstructionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.case)?;
        for b in &self.buckets {
            let tag = match b.winner_at_half {
                Some(true) => "+",
                Some(false) => "-",
                None => "",
            };
            let level = if b.turnout_level == TurnoutLevel::High { " (high turnout)" } else { "" };
            write!(f, " {}{tag}×{}{level}", Exact(&b.share), b.count)?;
        }
        let c = &self.chosen;
        for (name, v) in [("ε", &c.epsilon), ("δ", &c.delta), ("γ", &c.gamma), ("p", &c.p), ("C", &c.high_weight)] {
            if let Some(v) = v {
                write!(f, " {name}={}", Exact(v))?;
            }
        }
        if let Some(k) = c.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

/// The deterministic small step used by the constructions:
/// ε = slack / (2n · max(1, k + 1)). `None` when there is no positive slack.
pub fn choose_epsilon(slack: &Rational, n: usize, k: i64) -> Option<Rational> {
    if *slack <= Rational::zero() {
        return None;
    }
    Some(slack / int(2 * n as i64 * (k + 1).max(1)))
}

/// Orient a pair so party A holds at least half the seats.
pub(crate) fn orient(p: &SvPair) -> Result<(SvPair, bool), ConstructorError> {
    p.check_feasible(crate::election::Turnout::Equal)?;
    if p.s() < half() {
        Ok((p.swapped(), true))
    } else {
        Ok((p.clone(), false))
    }
}

pub(crate) fn restore(plan: ConstructionPlan, mirrored: bool) -> ConstructionPlan {
    if mirrored {
        plan.swapped()
    } else {
        plan
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn epsilon_rule() {
        assert_eq!(choose_epsilon(&half(), 10, 9), Some(ratio(1, 400)));
        assert_eq!(choose_epsilon(&int(0), 10, 3), None);
        assert_eq!(choose_epsilon(&half(), 4, -1), Some(ratio(1, 16)));
    }

    #[test]
    fn plan_compiles_with_flags_and_weights() {
        let mut plan = ConstructionPlan::new("demo");
        plan.add(half(), 1, Role::Loser).add_at(int(1), 1, Role::Winner, TurnoutLevel::High);
        let plan = plan.with(|c| c.high_weight = Some(int(3)));
        let e = plan.compile().unwrap();
        assert_eq!(e.vote_share(), ratio(7, 8));
        assert_eq!(e.seats_won(), 1);
        let m = plan.swapped().compile().unwrap();
        assert_eq!(m.vote_share(), ratio(1, 8));
        assert_eq!(m.seats_won(), 1);
    }
}
