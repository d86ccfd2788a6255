// Lattice searches for MM = PB = 0 and for near-zero declination.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{enumerate_extremes, LatticeSpec};
use super::OracleError;
use crate::bounds::{zero_achievable_at, zero_region_contains, zero_region_turnout};
use crate::election::SvPair;
use crate::rational::{self, half, int, ratio, Exact, Rational};

/// (V, seats won) pairs where some lattice election has MM = PB = 0.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroScan {
    pub spec: LatticeSpec,
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub turnout_ratio: Option<Rational>,
    #[serde(serialize_with = "pairs_exact")]
    pub points: BTreeSet<(Rational, usize)>,
}

fn pairs_exact<S: serde::Serializer>(pts: &BTreeSet<(Rational, usize)>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(pts.iter().map(|(v, w)| (Exact(v).to_string(), *w)))
}

/// Scan for zero-metric elections. With `turnout_ratio = Some(C)` every
/// district takes weight 1 or C, and V is the weighted statewide share.
pub fn zero_achievability_scan(
    spec: LatticeSpec,
    turnout_ratio: Option<Rational>,
    budget: u128,
) -> Result<ZeroScan, OracleError> {
    let points = match &turnout_ratio {
        None => {
            let table = enumerate_extremes(spec, budget)?;
            table.cells.iter().filter(|(_, c)| c.zero.is_some()).map(|(k, _)| (table.v(k), k.1)).collect()
        }
        Some(c) => {
            if *c < Rational::one() {
                return Err(OracleError::Domain(format!("turnout ratio {} is below 1", Exact(c))));
            }
            spec.check_budget(budget)?;
            let required = two_level_size(spec);
            if required > budget {
                return Err(OracleError::Budget { required, budget });
            }
            two_level_zero_points(spec, c)
        }
    };
    Ok(ZeroScan { spec, turnout_ratio, points })
}

fn multisets(size: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(size: usize, d: u32, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in from..=d {
            cur.push(x);
            rec(size, d, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, d, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

fn two_level_size(spec: LatticeSpec) -> u128 {
    let d = spec.d as u128;
    (0..=spec.n as u128)
        .map(|h| num_integer::binomial(spec.n as u128 - h + d, d) * num_integer::binomial(h + d, d))
        .sum()
}

fn two_level_zero_points(spec: LatticeSpec, c: &Rational) -> BTreeSet<(Rational, usize)> {
    let n = spec.n;
    let d = spec.d;
    let by_size: Vec<Vec<Vec<u32>>> = (0..=n).map(|k| multisets(k, d)).collect();
    (0..=n)
        .into_par_iter()
        .flat_map_iter(|high| {
            let lows = &by_size[n - high];
            let highs = &by_size[high];
            let mut found = BTreeSet::new();
            let mut merged = Vec::with_capacity(n);
            for low in lows {
                for hi in highs {
                    merged.clear();
                    merged.extend_from_slice(low);
                    merged.extend_from_slice(hi);
                    merged.sort_unstable();
                    if !is_zero(&merged) {
                        continue;
                    }
                    let low_sum: i64 = low.iter().map(|&x| x as i64).sum();
                    let high_sum: i64 = hi.iter().map(|&x| x as i64).sum();
                    let weight = int((n - high) as i64) + c * int(high as i64);
                    let v = (int(low_sum) + c * int(high_sum)) / (weight * int(d as i64));
                    let won = merged.iter().filter(|&&x| 2 * x > d).count();
                    let at_half = if spec.split_ties { merged.iter().filter(|&&x| 2 * x == d).count() } else { 0 };
                    for k in 0..=at_half {
                        found.insert((v.clone(), won + k));
                    }
                }
            }
            found
        })
        .collect()
}

fn is_zero(sorted: &[u32]) -> bool {
    let n = sorted.len() as i64;
    let t: i64 = sorted.iter().map(|&x| x as i64).sum();
    let m = sorted.len() / 2;
    let med2n = if sorted.len() % 2 == 1 { 2 * n * sorted[m] as i64 } else { n * (sorted[m - 1] + sorted[m]) as i64 };
    if med2n != 2 * t {
        return false;
    }
    let pb: i64 = sorted.iter().map(|&x| ((x as i64 * n) > t) as i64 - ((x as i64 * n) < t) as i64).sum();
    pb == 0
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroScanReport {
    pub n: usize,
    pub d: u32,
    pub points: usize,
    /// Lattice zeros outside the exact region, beyond one lattice step of its boundary.
    pub outside_region: Vec<(String, String)>,
    /// Lattice zeros the fixed-n achievability test calls impossible.
    pub fixed_n_disagreements: Vec<(String, String)>,
    /// Pairs the fixed-n test accepts that the lattice cannot realise (granularity only).
    pub unrealised_on_lattice: usize,
}

impl ZeroScanReport {
    pub fn passed(&self) -> bool {
        self.outside_region.is_empty() && self.fixed_n_disagreements.is_empty()
    }
}

/// Compare an equal-turnout scan against the exact region and the fixed-n test.
pub fn compare_zero_scan(scan: &ZeroScan) -> ZeroScanReport {
    let n = scan.spec.n;
    let d = scan.spec.d as i64;
    let step = ratio(1, d);
    let mut outside = Vec::new();
    let mut disagree = Vec::new();
    for (v, won) in &scan.points {
        let s = ratio(*won as i64, n as i64);
        let near = [v.clone(), v - &step, v + &step].iter().any(|x| zero_region_contains(x, &s));
        if !near {
            outside.push((Exact(v).to_string(), Exact(&s).to_string()));
        }
        let pair = SvPair::new(v.clone(), &s, n).expect("scan pairs use denominator n");
        if !zero_achievable_at(&pair) {
            disagree.push((Exact(v).to_string(), Exact(&s).to_string()));
        }
    }
    let mut unrealised = 0;
    for total in 0..=(n as i64 * d) {
        let v = ratio(total, n as i64 * d);
        for won in 0..=n {
            let s = ratio(won as i64, n as i64);
            if let Ok(pair) = SvPair::new(v.clone(), &s, n) {
                if zero_achievable_at(&pair) && !scan.points.contains(&(v.clone(), won)) {
                    unrealised += 1;
                }
            }
        }
    }
    ZeroScanReport {
        n,
        d: scan.spec.d,
        points: scan.points.len(),
        outside_region: outside,
        fixed_n_disagreements: disagree,
        unrealised_on_lattice: unrealised,
    }
}

/// Per seat-share row: lowest and highest V with a weighted zero election,
/// beside the band the turnout result guarantees.
#[derive(Debug, Clone, Serialize)]
pub struct TurnoutRow {
    pub s: String,
    pub lattice_min_v: String,
    pub lattice_max_v: String,
    pub band_lo: String,
    pub band_hi: String,
    /// Lowest lattice V is at or below the band's lower end.
    pub reaches_band_lo: bool,
}

pub fn compare_turnout_scan(scan: &ZeroScan) -> Result<Vec<TurnoutRow>, OracleError> {
    let c = scan
        .turnout_ratio
        .clone()
        .ok_or_else(|| OracleError::Domain("scan was run with equal turnout".into()))?;
    let n = scan.spec.n as i64;
    let mut rows: BTreeMap<usize, (Rational, Rational)> = BTreeMap::new();
    for (v, won) in &scan.points {
        let e = rows.entry(*won).or_insert((v.clone(), v.clone()));
        if *v < e.0 {
            e.0 = v.clone();
        }
        if *v > e.1 {
            e.1 = v.clone();
        }
    }
    let mut out = Vec::new();
    for (won, (lo, hi)) in rows {
        let s = ratio(won as i64, n);
        if s < half() {
            continue;
        }
        let band = zero_region_turnout(&s, &c).map_err(|e| OracleError::Domain(e.to_string()))?;
        out.push(TurnoutRow {
            s: Exact(&s).to_string(),
            lattice_min_v: Exact(&lo).to_string(),
            lattice_max_v: Exact(&hi).to_string(),
            band_lo: Exact(&band.v_lo).to_string(),
            band_hi: Exact(&band.v_hi).to_string(),
            reaches_band_lo: lo <= band.v_lo,
        });
    }
    Ok(out)
}

/// Search for elections with |declination| ≤ tol on a share lattice.
///
/// Declination depends only on the seat count and the sums of winning and
/// losing shares, and every integer sum between the extremes is reachable,
/// so the scan runs over (won, loser sum, winner sum) instead of elections.
/// Angles are evaluated in f64; the result is an approximate region.
#[derive(Debug, Clone, Serialize)]
pub struct DeclinationZeroScan {
    pub n: usize,
    pub d: u32,
    pub tol: f64,
}

impl DeclinationZeroScan {
    pub fn standard() -> Self {
        Self { n: 8, d: 40, tol: 0.02 }
    }

    pub fn run(&self) -> DeclinationZeroSet {
        let n = self.n as i64;
        let d = self.d as i64;
        let mut totals: BTreeMap<usize, BTreeSet<i64>> = BTreeMap::new();
        for won in 1..self.n {
            let lost = self.n - won;
            let (w, l) = (won as f64, lost as f64);
            let set = totals.entry(won).or_default();
            for sl in 0..=(lost as i64 * (d / 2)) {
                let mean_lost = sl as f64 / (l * d as f64);
                let loss = ((0.5 - mean_lost) * 2.0 * n as f64 / l).atan();
                for sw in (won as i64 * ((d + 1) / 2))..=(won as i64 * d) {
                    let mean_won = sw as f64 / (w * d as f64);
                    let win = ((mean_won - 0.5) * 2.0 * n as f64 / w).atan();
                    let dec = 2.0 / std::f64::consts::PI * (win - loss);
                    if dec.abs() <= self.tol {
                        set.insert(sl + sw);
                    }
                }
            }
        }
        DeclinationZeroSet { n: self.n, d: self.d, totals }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeclinationZeroSet {
    pub n: usize,
    pub d: u32,
    /// Seats won → share-numerator totals with near-zero declination.
    pub totals: BTreeMap<usize, BTreeSet<i64>>,
}

impl DeclinationZeroSet {
    pub fn contains(&self, total: i64, won: usize) -> bool {
        self.totals.get(&won).is_some_and(|t| t.contains(&total))
    }

    /// Whether a found point lies within `width` of `v` on the seat row nearest `s`.
    pub fn near(&self, v: &Rational, s: &Rational, width: &Rational) -> bool {
        let n = self.n as i64;
        let scale = int(n * self.d as i64);
        let won = rational::floor(&(s * int(n) + half()));
        let Ok(won) = usize::try_from(won) else { return false };
        let Some(totals) = self.totals.get(&won) else { return false };
        let reach = rational::max_of(width, &ratio(1, 2 * n * self.d as i64));
        let lo = rational::ceil(&((v - &reach) * &scale));
        let hi = rational::floor(&((v + &reach) * &scale));
        let (Ok(lo), Ok(hi)) = (i64::try_from(lo), i64::try_from(hi)) else { return false };
        lo <= hi && totals.range(lo..=hi).next().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn no_zero_below_half_vote() {
        let scan = zero_achievability_scan(LatticeSpec::new(6, 12), None, DEFAULT_BUDGET).unwrap();
        let cut = half() - ratio(1, 12);
        for (v, won) in &scan.points {
            if 2 * won > 6 {
                assert!(*v >= cut, "zero at V={} won={won}", Exact(v));
            }
        }
        let report = compare_zero_scan(&scan);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn weighted_row_reaches_below_half() {
        let scan = zero_achievability_scan(LatticeSpec::new(4, 6), Some(int(3)), DEFAULT_BUDGET).unwrap();
        let rows = compare_turnout_scan(&scan).unwrap();
        let half_row = rows.iter().find(|r| r.s == "1/2").unwrap();
        assert!(half_row.reaches_band_lo);
        assert!(rational::parse_rational(&half_row.lattice_min_v).unwrap() < ratio(1, 4));
    }

    #[test]
    fn declination_scan_is_symmetric() {
        let found = DeclinationZeroScan { n: 4, d: 10, tol: 0.02 }.run();
        for (won, totals) in &found.totals {
            for t in totals {
                assert!(found.contains(40 - t, 4 - won), "({t}, {won})");
            }
        }
        assert!(found.contains(20, 2));
    }
}
