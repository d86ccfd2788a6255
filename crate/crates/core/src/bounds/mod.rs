//! Achievable MM/PB ranges for a vote-share / seat-share pair.
//!
//! Two flavours exist for each metric: the limit ranges (any number of
//! districts) and the ranges at a fixed district count `n` with equal
//! turnout. Formulas are written for party A holding at least half the seats;
//! every other feasible pair is answered through the party-swap mirror
//! (V, S) → (1 − V, 1 − S), which negates and reverses the interval.
//!
//! The fixed-n functions return the sharp extremes. They agree with the
//! formulas as originally stated (see [`literal`]) except on a few boundary
//! cases where those formulas are either empty or miss elections with
//! districts sitting exactly at the mean.

pub mod literal;
mod raster;
mod zero;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::election::{check_feasible, Infeasible, SvPair, Turnout};
use crate::rational::{self, half, int, max_of, min_of, ratio, Exact, Rational};

pub use raster::{region_raster, CellValue, Raster, RasterCell, RasterKind, RasterMetric, RasterSpec};
pub use zero::{
    closed_form_zero_region, turnout_zero_contains, zero_achievable_at, zero_region_contains, zero_region_turnout,
    TurnoutZeroBand,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("infeasible pair: {0}")]
    Infeasible(#[from] Infeasible),
    #[error("fixed-n mean-median ranges need at least 3 districts, got {0}")]
    TooFewDistricts(usize),
    #[error("turnout ratio C must be at least 1, got {0}")]
    TurnoutRatio(String),
    #[error("seat share {0} is below 1/2; pass the mirrored pair")]
    SeatShareBelowHalf(String),
    #[error("raster grid needs at least 2 points per axis")]
    Grid,
    #[error("{0}")]
    Unsupported(&'static str),
    #[error("formula gives an empty interval: lo {lo} > hi {hi}")]
    Empty { lo: String, hi: String },
}

/// An achievable range with explicit endpoint strictness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricInterval {
    #[serde(with = "rational::serde_rational")]
    lo: Rational,
    #[serde(with = "rational::serde_rational")]
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rational::serde_rational_opt::serialize")]
    forced: Option<Rational>,
}

impl MetricInterval {
    /// Interval with the given strictness. A closed single point becomes forced.
    pub fn new(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Result<Self, BoundsError> {
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Err(BoundsError::Empty { lo: Exact(&lo).to_string(), hi: Exact(&hi).to_string() });
        }
        let forced = (lo == hi).then(|| lo.clone());
        Ok(Self { lo, hi, lo_closed, hi_closed, forced })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self, BoundsError> {
        Self::new(lo, true, hi, true)
    }

    pub fn forced(value: Rational) -> Self {
        Self { lo: value.clone(), hi: value.clone(), lo_closed: true, hi_closed: true, forced: Some(value) }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn forced_value(&self) -> Option<&Rational> {
        self.forced.as_ref()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = *x > self.lo || (self.lo_closed && *x == self.lo);
        let below = *x < self.hi || (self.hi_closed && *x == self.hi);
        above && below
    }

    pub fn closure_contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// The interval seen from the other party: x ↦ −x.
    pub fn negated(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
            forced: self.forced.as_ref().map(|f| -f),
        }
    }
}

impl fmt::Display for MetricInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = &self.forced {
            return write!(f, "forced {}", Exact(v));
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", Exact(&self.lo), Exact(&self.hi))
    }
}

/// Feasible pair, mirrored when party A holds fewer than half the seats.
fn oriented(v: &Rational, s: &Rational) -> Result<(Rational, Rational, bool), BoundsError> {
    check_feasible(v, s, Turnout::Equal)?;
    if *s < half() {
        Ok((Rational::one() - v, Rational::one() - s, true))
    } else {
        Ok((v.clone(), s.clone(), false))
    }
}

fn oriented_pair(p: &SvPair) -> Result<(SvPair, bool), BoundsError> {
    p.check_feasible(Turnout::Equal)?;
    if p.s() < half() {
        Ok((p.swapped(), true))
    } else {
        Ok((p.clone(), false))
    }
}

fn unmirror(i: MetricInterval, mirrored: bool) -> MetricInterval {
    if mirrored {
        i.negated()
    } else {
        i
    }
}

fn q(num: i64, den: i64) -> Rational {
    ratio(num, den)
}

/// Limit range of PB over elections with any number of districts.
pub fn pb_range_limit(v: &Rational, s: &Rational) -> Result<MetricInterval, BoundsError> {
    let (v, s, mirrored) = oriented(v, s)?;
    Ok(unmirror(pb_limit_upper_half(&v, &s)?, mirrored))
}

fn pb_limit_upper_half(v: &Rational, s: &Rational) -> Result<MetricInterval, BoundsError> {
    let h = half();
    let one = Rational::one();
    if v.is_one() || (s.is_one() && *v == h) {
        return Ok(MetricInterval::forced(Rational::zero()));
    }
    if *v == h {
        return MetricInterval::new((s - &one) / int(2), false, s / int(2), false);
    }
    if *v < h {
        if *s == v * int(2) {
            return Ok(MetricInterval::forced(s - &h));
        }
        let hi = &h - s * (one / (v * int(2)) - Rational::one());
        return MetricInterval::new(s - &h, true, hi, false);
    }
    if s.is_one() {
        return MetricInterval::new(-h.clone(), false, h, false);
    }
    if *s == v * int(2) - &one {
        return Ok(MetricInterval::forced(s - &h));
    }
    let lo = (&one - s) * (v - &h) / (&one - v) - &h;
    MetricInterval::new(lo, false, s - h, true)
}

/// Limit range of MM over elections with any number of districts.
pub fn mm_range_limit(v: &Rational, s: &Rational) -> Result<MetricInterval, BoundsError> {
    let (v, s, mirrored) = oriented(v, s)?;
    Ok(unmirror(mm_limit_upper_half(&v, &s)?, mirrored))
}

fn mm_limit_upper_half(v: &Rational, s: &Rational) -> Result<MetricInterval, BoundsError> {
    let h = half();
    let one = Rational::one();
    let quarter = q(1, 4);
    let three_quarters = q(3, 4);
    if *s == h {
        if *v == quarter || *v == three_quarters {
            return Ok(MetricInterval::forced(Rational::zero()));
        }
        if *v < h {
            return MetricInterval::new(&quarter - v, true, quarter, false);
        }
        if *v == h {
            return MetricInterval::new(-quarter.clone(), false, quarter, false);
        }
        return MetricInterval::new(-quarter, false, three_quarters - v, true);
    }
    if *v < three_quarters {
        if *s == v * int(2) {
            return Ok(MetricInterval::forced(&h - v));
        }
        let cap = &one - v;
        let slope = v - s + &h;
        let hi_closed = cap < slope;
        return MetricInterval::new(&h - v, true, min_of(&cap, &slope), hi_closed);
    }
    if *s == v * int(2) - &one {
        return Ok(MetricInterval::forced(&one - v));
    }
    let lo = (v * int(2) + s - int(2)) / (s * int(2) - &one) - v;
    let hi_closed = !(*v == three_quarters && s.is_one());
    MetricInterval::new(lo, false, one - v, hi_closed)
}

/// Smallest lower and largest upper limit MM bound at `v` over seat shares
/// on the 1/`grid` lattice.
pub fn mm_limit_envelope(v: &Rational, grid: i64) -> Result<(Rational, Rational), BoundsError> {
    let mut env: Option<(Rational, Rational)> = None;
    for k in 0..=grid {
        let Ok(i) = mm_range_limit(v, &q(k, grid)) else { continue };
        env = Some(match env {
            None => (i.lo().clone(), i.hi().clone()),
            Some((lo, hi)) => (min_of(&lo, i.lo()), max_of(&hi, i.hi())),
        });
    }
    env.ok_or(BoundsError::Grid)
}

/// Sharp PB range at a fixed district count with equal turnout.
pub fn pb_range_fixed(p: &SvPair) -> Result<MetricInterval, BoundsError> {
    let (p, mirrored) = oriented_pair(p)?;
    Ok(unmirror(pb_fixed_upper_half(&p)?, mirrored))
}

/// Extra above-mean districts available to the maximum when V < ½: the
/// integer t in PB_max = (n − 2ℓ + t)/(2n).
pub(crate) fn pb_max_extra(p: &SvPair) -> i64 {
    let n = p.n() as i64;
    let v = p.v();
    let slack = v * int(n) - q(p.won() as i64, 2);
    if slack.is_zero() {
        return 0;
    }
    let m = &slack / v;
    match rational::as_i64(&m) {
        Some(1) => 1,
        Some(m) => 2 * (m - 1),
        None => 2 * rational::floor(&m).try_into().unwrap_or(i64::MAX / 4),
    }
}

/// Layout behind the minimum when ½ < V < 1 and S < 1: `(above, at_mean)`,
/// the numbers of winners above and exactly at the mean.
pub(crate) fn pb_min_layout(p: &SvPair) -> (i64, i64) {
    let n = p.n() as i64;
    let l = p.lost() as i64;
    let v = p.v();
    let one = Rational::one();
    let threshold = int(l) * (v - half()) / (&one - v);
    match rational::as_i64(&threshold) {
        Some(a0) => {
            let spread = 2 * (a0 + 1) - n;
            let parked = a0 - l;
            if a0 < n - l && spread <= parked {
                (a0 + 1, 0)
            } else {
                (a0, n - l - a0)
            }
        }
        None => {
            let above: i64 = rational::ceil(&threshold).try_into().expect("district count fits i64");
            (above, 0)
        }
    }
}

fn pb_fixed_upper_half(p: &SvPair) -> Result<MetricInterval, BoundsError> {
    let n = p.n() as i64;
    let l = p.lost() as i64;
    let v = p.v();
    let s = p.s();
    let h = half();
    if n == 1 || v.is_one() || (s.is_one() && *v == h) {
        return Ok(MetricInterval::forced(Rational::zero()));
    }
    if *v == h {
        return MetricInterval::closed((&s - Rational::one() + q(1, n)) / int(2), (&s - q(1, n)) / int(2));
    }
    if *v < h {
        return MetricInterval::closed(&s - &h, q(n - 2 * l + pb_max_extra(p), 2 * n));
    }
    if s.is_one() {
        return MetricInterval::closed(q(1, n) - &h, h - q(1, n));
    }
    let (above, at_mean) = pb_min_layout(p);
    let below = n - l - above - at_mean;
    MetricInterval::closed(q(above - below - l, 2 * n), s - h)
}

/// Sharp MM range at a fixed district count (n ≥ 3) with equal turnout.
pub fn mm_range_fixed(p: &SvPair) -> Result<MetricInterval, BoundsError> {
    if p.n() < 3 {
        return Err(BoundsError::TooFewDistricts(p.n()));
    }
    let (p, mirrored) = oriented_pair(p)?;
    Ok(unmirror(mm_fixed_upper_half(&p)?, mirrored))
}

/// Largest MM on the S = ½ row at even n.
pub(crate) fn mm_half_seat_max(v: &Rational, n: i64) -> Rational {
    let quarter = q(1, 4);
    if *v < &quarter + q(1, 2 * n) {
        int(n - 2) * (v - quarter) / int(2)
    } else if *v <= q(n + 1, 2 * n) {
        quarter - q(1, 2 * n)
    } else {
        q(3, 4) - v
    }
}

/// Median value of the layout that maximises MM when S > ½ (before capping at 1).
pub(crate) fn mm_max_median(v: &Rational, s: &Rational, n: i64) -> Rational {
    let base = v * int(2) + half() - s;
    if n % 2 == 0 {
        (base + q(1, n)) / (Rational::one() + q(2, n))
    } else {
        (base + q(1, 2 * n)) / (Rational::one() + q(1, n))
    }
}

/// True when the MM minimum for S > ½ is the plain ½ − V layout.
pub(crate) fn mm_min_is_flat(v: &Rational, n: i64) -> bool {
    if n % 2 == 0 {
        *v <= q(3 * n - 2, 4 * n)
    } else {
        *v <= q(3 * n - 1, 4 * n)
    }
}

/// Median value of the layout that minimises MM when S > ½ and V is large.
pub(crate) fn mm_min_median(v: &Rational, s: &Rational, n: i64) -> Rational {
    let shift = if n % 2 == 0 { q(2, n) } else { q(1, n) };
    (v * int(2) + s - int(2) + &shift) / (s * int(2) - Rational::one() + shift)
}

fn mm_fixed_upper_half(p: &SvPair) -> Result<MetricInterval, BoundsError> {
    let n = p.n() as i64;
    let v = p.v();
    let s = p.s();
    let one = Rational::one();
    if s == half() {
        let hi = mm_half_seat_max(v, n);
        let lo = -mm_half_seat_max(&(&one - v), n);
        return MetricInterval::closed(lo, hi);
    }
    let hi = min_of(&(&one - v), &(mm_max_median(v, &s, n) - v));
    let lo = if mm_min_is_flat(v, n) { half() - v } else { mm_min_median(v, &s, n) - v };
    MetricInterval::closed(lo, hi)
}

/// Source of fixed-n range formulas, so the oracle can check alternatives.
pub trait RangeFormulas: Sync {
    fn name(&self) -> &str;
    fn pb_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError>;
    fn mm_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError>;
}

/// The sharp ranges implemented by [`pb_range_fixed`] and [`mm_range_fixed`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SharpRanges;

impl RangeFormulas for SharpRanges {
    fn name(&self) -> &str {
        "sharp"
    }

    fn pb_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError> {
        pb_range_fixed(p)
    }

    fn mm_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError> {
        mm_range_fixed(p)
    }
}
