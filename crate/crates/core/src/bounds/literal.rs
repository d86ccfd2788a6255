//! Fixed-n range formulas exactly as originally stated, before boundary
//! corrections. The oracle uses them to show where they disagree with
//! exhaustive search.

use num_traits::One;

use super::{oriented_pair, q, unmirror, BoundsError, MetricInterval, RangeFormulas};
use crate::election::SvPair;
use crate::rational::{self, half, int, min_of, Rational};

/// Which of the two odd-n upper-bound expressions to use for MM when S > ½.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OddUpper {
    /// (2V + ½ − S + 1/(2n))/(1 + 1/n) − V.
    #[default]
    Stated,
    /// The even-n expression (2V + ½ − S + 1/n)/(1 + 2/n) − V reused for odd n.
    EvenForm,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LiteralRanges {
    pub odd_upper: OddUpper,
}

impl LiteralRanges {
    pub fn new(odd_upper: OddUpper) -> Self {
        Self { odd_upper }
    }
}

fn k_of(x: Rational, n: i64) -> i64 {
    let k = rational::ceil(&(int(n) * x - Rational::one()));
    k.try_into().expect("district count fits i64")
}

impl RangeFormulas for LiteralRanges {
    fn name(&self) -> &str {
        match self.odd_upper {
            OddUpper::Stated => "literal",
            OddUpper::EvenForm => "literal-even-form",
        }
    }

    fn pb_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError> {
        let (p, mirrored) = oriented_pair(p)?;
        let n = p.n() as i64;
        let v = p.v();
        let s = p.s();
        let h = half();
        let one = Rational::one();
        let i = if s.is_one() && (*v == h || v.is_one()) {
            MetricInterval::forced(int(0))
        } else if *v < h {
            let k = k_of(&one - &s / (v * int(2)), n);
            MetricInterval::closed(&s - &h, (&s * int(2) - &one + q(2 * k, n)) / int(2))?
        } else if *v == h {
            MetricInterval::closed((&s - &one + q(1, n)) / int(2), (&s - q(1, n)) / int(2))?
        } else if !s.is_one() {
            let k = k_of(&one - (&one - &s) / (int(2) * (&one - v)), n);
            MetricInterval::closed((&s * int(2) - &one - q(2 * k, n)) / int(2), s - h)?
        } else {
            MetricInterval::closed(q(1, n) - &h, h - q(1, n))?
        };
        Ok(unmirror(i, mirrored))
    }

    fn mm_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError> {
        if p.n() < 3 {
            return Err(BoundsError::TooFewDistricts(p.n()));
        }
        let (p, mirrored) = oriented_pair(p)?;
        let n = p.n() as i64;
        let v = p.v();
        let s = p.s();
        let h = half();
        let one = Rational::one();
        let i = if s == h {
            literal_half_row(v, n, HalfRowBoundary::Inclusive)?
        } else {
            let base = v * int(2) + &h - &s;
            let even_hi = (&base + q(1, n)) / (&one + q(2, n)) - v;
            let (hi, flat, shift) = if n % 2 == 0 {
                (even_hi, *v <= q(3 * n - 2, 4 * n), q(2, n))
            } else {
                let hi = match self.odd_upper {
                    OddUpper::Stated => (&base + q(1, 2 * n)) / (&one + q(1, n)) - v,
                    OddUpper::EvenForm => even_hi,
                };
                (hi, *v < q(3 * n - 1, 4 * n), q(1, n))
            };
            let hi = min_of(&(&one - v), &hi);
            let lo = if flat {
                h - v
            } else {
                (v * int(2) + &s - int(2) + &shift) / (&s * int(2) - &one + shift) - v
            };
            MetricInterval::closed(lo, hi)?
        };
        Ok(unmirror(i, mirrored))
    }
}

/// Which row of the S = ½ case owns the boundary V = (n − 1)/(2n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfRowBoundary {
    /// V ≤ (n − 1)/(2n) takes the first row.
    Inclusive,
    /// V < (n − 1)/(2n) takes the first row.
    Exclusive,
}

/// The stated S = ½ MM interval at even n, with the given boundary placement.
pub fn literal_half_row(v: &Rational, n: i64, boundary: HalfRowBoundary) -> Result<MetricInterval, BoundsError> {
    let quarter = q(1, 4);
    let cut = q(n - 1, 2 * n);
    let first_row = match boundary {
        HalfRowBoundary::Inclusive => *v <= cut,
        HalfRowBoundary::Exclusive => *v < cut,
    };
    if first_row {
        MetricInterval::closed(&quarter - v, &quarter - q(1, 2 * n))
    } else if *v < q(n + 1, 2 * n) {
        MetricInterval::closed(q(1, 2 * n) - &quarter, &quarter - q(1, 2 * n))
    } else {
        MetricInterval::closed(q(1, 2 * n) - &quarter, q(3, 4) - v)
    }
}
