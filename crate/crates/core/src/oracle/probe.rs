// Lattice extremes at a single (V, S, n) without enumerating elections.
//
// Sorted shares put losers first. Each position then has an integer range
// ([0, ⌊D/2⌋] for losers, [⌈D/2⌉, D] for winners), and with nondecreasing
// range endpoints every integer total between the endpoint sums is reachable
// by a sorted vector. That turns both extremes into small feasibility scans:
// over median values for MM, over counts of above/at/below-mean districts
// for PB.

use num_traits::Zero;
use serde::Serialize;

use crate::election::SvPair;
use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeExtremes {
    #[serde(with = "rational::serde_rational")]
    pub min_mm: Rational,
    #[serde(with = "rational::serde_rational")]
    pub max_mm: Rational,
    #[serde(with = "rational::serde_rational")]
    pub min_pb: Rational,
    #[serde(with = "rational::serde_rational")]
    pub max_pb: Rational,
}

struct Layout {
    n: usize,
    d: i64,
    lost: usize,
    total: i64,
}

impl Layout {
    fn base(&self, i: usize) -> (i64, i64) {
        if i < self.lost {
            (0, self.d / 2)
        } else {
            ((self.d + 1) / 2, self.d)
        }
    }

    /// Is some sorted election with positions `lo_mid..=hi_mid` pinned to
    /// `pins` able to reach the total?
    fn feasible(&self, pins: &[(usize, i64)]) -> bool {
        let first = pins[0].0;
        let last = pins[pins.len() - 1].0;
        let (below, above) = (pins[0].1, pins[pins.len() - 1].1);
        let (mut lo_sum, mut hi_sum) = (0i64, 0i64);
        for i in 0..self.n {
            let (mut lo, mut hi) = self.base(i);
            if let Some(&(_, v)) = pins.iter().find(|(p, _)| *p == i) {
                if v < lo || v > hi {
                    return false;
                }
                lo = v;
                hi = v;
            } else if i < first {
                hi = hi.min(below);
            } else if i > last {
                lo = lo.max(above);
            }
            if lo > hi {
                return false;
            }
            lo_sum += lo;
            hi_sum += hi;
        }
        lo_sum <= self.total && self.total <= hi_sum
    }

    /// Reachable doubled medians (a + b for even n, 2m for odd n).
    fn medians(&self) -> Vec<i64> {
        let mut out = Vec::new();
        if self.n % 2 == 1 {
            let mid = self.n / 2;
            for m in 0..=self.d {
                if self.feasible(&[(mid, m)]) {
                    out.push(2 * m);
                }
            }
        } else {
            let mid = self.n / 2;
            for a in 0..=self.d {
                for b in a..=self.d {
                    if self.feasible(&[(mid - 1, a), (mid, b)]) {
                        out.push(a + b);
                    }
                }
            }
        }
        out
    }

    fn pb_counts(&self) -> Vec<i64> {
        let n = self.n as i64;
        // Share x is below the mean iff x·n < total.
        let below_max = (self.total - 1).div_euclid(n);
        let above_min = self.total.div_euclid(n) + 1;
        let at = (self.total % n == 0).then(|| self.total / n);
        let classes = |lo: i64, hi: i64| {
            [
                (lo, hi.min(below_max)),
                at.filter(|&m| lo <= m && m <= hi).map_or((1, 0), |m| (m, m)),
                (lo.max(above_min), hi),
            ]
        };
        let loser = classes(0, self.d / 2);
        let winner = classes((self.d + 1) / 2, self.d);
        let won = self.n - self.lost;
        let mut out = Vec::new();
        for (lb, la, lab) in splits(self.lost) {
            for (wb, wa, wab) in splits(won) {
                let counts = [(lb, loser[0]), (la, loser[1]), (lab, loser[2]), (wb, winner[0]), (wa, winner[1]), (wab, winner[2])];
                let mut lo_sum = 0;
                let mut hi_sum = 0;
                let ok = counts.iter().all(|&(c, (lo, hi))| {
                    if c == 0 {
                        return true;
                    }
                    lo_sum += c as i64 * lo;
                    hi_sum += c as i64 * hi;
                    lo <= hi
                });
                if ok && lo_sum <= self.total && self.total <= hi_sum {
                    out.push((lab + wab) as i64 - (lb + wb) as i64);
                }
            }
        }
        out
    }
}

fn splits(k: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=k).flat_map(move |a| (0..=k - a).map(move |b| (a, b, k - a - b)))
}

/// Extremes of MM and PB over elections with shares in {0, 1/D, ..., 1}
/// at the pair's (V, S, n). `None` when V·n·D is not an integer or no
/// lattice election exists.
pub fn probe_extremes(pair: &SvPair, d: u32) -> Option<ProbeExtremes> {
    let n = pair.n();
    let scaled = pair.v() * int(n as i64 * d as i64);
    let total = rational::as_i64(&scaled)?;
    let layout = Layout { n, d: d as i64, lost: pair.lost(), total };
    let medians = layout.medians();
    let counts = layout.pb_counts();
    let (lo_m, hi_m) = (medians.iter().min()?, medians.iter().max()?);
    let (lo_p, hi_p) = (counts.iter().min()?, counts.iter().max()?);
    let mean = pair.v().clone();
    let med = |m: i64| ratio(m, 2 * d as i64) - &mean;
    let pb = |c: i64| ratio(c, 2 * n as i64);
    let out = ProbeExtremes { min_mm: med(*lo_m), max_mm: med(*hi_m), min_pb: pb(*lo_p), max_pb: pb(*hi_p) };
    debug_assert!(out.min_mm <= out.max_mm && !(out.max_pb < Rational::zero() && out.min_pb > Rational::zero()));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate::{enumerate_extremes, LatticeSpec, DEFAULT_BUDGET};

    #[test]
    fn probe_agrees_with_enumeration() {
        for (n, d) in [(3usize, 10u32), (4, 8), (5, 6), (6, 5)] {
            let table = enumerate_extremes(LatticeSpec::new(n, d), DEFAULT_BUDGET).unwrap();
            for (key, cell) in &table.cells {
                let p = probe_extremes(&table.pair(key), d).expect("lattice pair");
                assert_eq!(p.min_mm, table.mm_value(&cell.min_mm), "n={n} d={d} {key:?}");
                assert_eq!(p.max_mm, table.mm_value(&cell.max_mm), "n={n} d={d} {key:?}");
                assert_eq!(p.min_pb, table.pb_value(&cell.min_pb), "n={n} d={d} {key:?}");
                assert_eq!(p.max_pb, table.pb_value(&cell.max_pb), "n={n} d={d} {key:?}");
            }
        }
    }
}
