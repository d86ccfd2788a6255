// Exhaustive search over share multisets on the grid {0, 1/D, ..., 1}.

use std::collections::{BTreeMap, HashMap};

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use super::OracleError;
use crate::election::{DistrictResult, Election, SvPair};
use crate::rational::{ratio, Rational};

/// Default cap on evaluated (multiset, tie split) pairs.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeSpec {
    pub n: usize,
    pub d: u32,
    /// Let districts at exactly ½ be flagged won or lost. When false they all count as lost.
    pub split_ties: bool,
}

impl LatticeSpec {
    pub fn new(n: usize, d: u32) -> Self {
        Self { n, d, split_ties: true }
    }

    /// Number of evaluations: every multiset, plus one per extra way to flag
    /// its ½-shares. Σ over multisets of (#½-shares) is C(n − 1 + D, n − 1).
    pub fn size(&self) -> u128 {
        let n = self.n as u128;
        let d = self.d as u128;
        let multisets = binomial(n + d, n);
        if self.split_ties && self.d.is_multiple_of(2) && n > 0 {
            multisets + binomial(n - 1 + d, n - 1)
        } else {
            multisets
        }
    }

    pub fn check_budget(&self, budget: u128) -> Result<(), OracleError> {
        if self.n == 0 || self.d < 2 {
            return Err(OracleError::Domain(format!("lattice needs n ≥ 1 and D ≥ 2, got n={} D={}", self.n, self.d)));
        }
        let required = self.size();
        if required > budget {
            return Err(OracleError::Budget { required, budget });
        }
        Ok(())
    }
}

/// Shares as numerators over D in ascending order; `half_won` of the
/// districts at exactly ½ are flagged won.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LatticeWitness {
    pub shares: Vec<u32>,
    pub half_won: u32,
}

impl LatticeWitness {
    pub fn to_election(&self, d: u32) -> Election {
        let mut districts: Vec<DistrictResult> = self
            .shares
            .iter()
            .map(|&x| {
                if 2 * x == d {
                    DistrictResult::half_lost()
                } else {
                    DistrictResult::decided(ratio(x as i64, d as i64)).expect("off-half share")
                }
            })
            .collect();
        // Shares are ascending, so the last districts at ½ take the won flags.
        let mut remaining = self.half_won;
        for dr in districts.iter_mut().rev() {
            if remaining > 0 && dr.winner_at_half().is_some() {
                *dr = DistrictResult::half_won();
                remaining -= 1;
            }
        }
        Election::new(districts, None).expect("lattice shares form a valid election")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Extreme {
    /// Numerator: MM over 2nD, PB over 2n.
    pub value: i64,
    pub witness: LatticeWitness,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellExtremes {
    pub min_mm: Extreme,
    pub max_mm: Extreme,
    pub min_pb: Extreme,
    pub max_pb: Extreme,
    /// Lexicographically first witness with MM = PB = 0, if any.
    pub zero: Option<LatticeWitness>,
}

impl CellExtremes {
    fn seed(mm: i64, pb: i64, w: &LatticeWitness) -> Self {
        let e = |value| Extreme { value, witness: w.clone() };
        Self {
            min_mm: e(mm),
            max_mm: e(mm),
            min_pb: e(pb),
            max_pb: e(pb),
            zero: (mm == 0 && pb == 0).then(|| w.clone()),
        }
    }

    // Keep the more extreme value; on ties keep the smaller witness so the
    // result does not depend on how work was split.
    fn absorb(&mut self, other: CellExtremes) {
        pick(&mut self.min_mm, other.min_mm, |a, b| a < b);
        pick(&mut self.max_mm, other.max_mm, |a, b| a > b);
        pick(&mut self.min_pb, other.min_pb, |a, b| a < b);
        pick(&mut self.max_pb, other.max_pb, |a, b| a > b);
        match (&self.zero, other.zero) {
            (Some(a), Some(b)) if b < *a => self.zero = Some(b),
            (None, b) => self.zero = b,
            _ => {}
        }
    }
}

fn pick(slot: &mut Extreme, cand: Extreme, better: impl Fn(i64, i64) -> bool) {
    if better(cand.value, slot.value) || (cand.value == slot.value && cand.witness < slot.witness) {
        *slot = cand;
    }
}

pub type CellKey = (u64, usize);

/// Lattice extremes keyed by (sum of share numerators, seats won).
#[derive(Debug, Clone, Serialize)]
pub struct AchievabilityTable {
    pub spec: LatticeSpec,
    pub cells: BTreeMap<CellKey, CellExtremes>,
}

impl AchievabilityTable {
    pub fn v(&self, key: &CellKey) -> Rational {
        ratio(key.0 as i64, (self.spec.n as i64) * self.spec.d as i64)
    }

    pub fn s(&self, key: &CellKey) -> Rational {
        ratio(key.1 as i64, self.spec.n as i64)
    }

    pub fn pair(&self, key: &CellKey) -> SvPair {
        SvPair::from_counts(self.v(key), self.spec.n, self.spec.n - key.1).expect("lattice pair is well formed")
    }

    pub fn mm_value(&self, e: &Extreme) -> Rational {
        ratio(e.value, 2 * self.spec.n as i64 * self.spec.d as i64)
    }

    pub fn pb_value(&self, e: &Extreme) -> Rational {
        ratio(e.value, 2 * self.spec.n as i64)
    }

    /// (min MM, max MM, min PB, max PB, zero achievable) per key, as exact rationals.
    pub fn values(&self) -> BTreeMap<CellKey, [Rational; 4]> {
        self.cells
            .iter()
            .map(|(k, c)| {
                (
                    *k,
                    [
                        self.mm_value(&c.min_mm),
                        self.mm_value(&c.max_mm),
                        self.pb_value(&c.min_pb),
                        self.pb_value(&c.max_pb),
                    ],
                )
            })
            .collect()
    }
}

struct Scorer {
    n: usize,
    d: u32,
    split_ties: bool,
}

impl Scorer {
    fn score(&self, xs: &[u32], out: &mut HashMap<CellKey, CellExtremes>) {
        let n = self.n as i64;
        let total: u64 = xs.iter().map(|&x| x as u64).sum();
        let t = total as i64;
        let med2n = if self.n % 2 == 1 {
            2 * n * xs[self.n / 2] as i64
        } else {
            n * (xs[self.n / 2 - 1] as i64 + xs[self.n / 2] as i64)
        };
        let mm = med2n - 2 * t;
        let mut pb = 0i64;
        let mut won = 0usize;
        let mut at_half = 0u32;
        for &x in xs {
            let scaled = x as i64 * n;
            pb += (scaled > t) as i64 - (scaled < t) as i64;
            if 2 * x > self.d {
                won += 1;
            } else if 2 * x == self.d {
                at_half += 1;
            }
        }
        let splits = if self.split_ties { at_half } else { 0 };
        for k in 0..=splits {
            let key = (total, won + k as usize);
            let witness = || LatticeWitness { shares: xs.to_vec(), half_won: k };
            match out.get_mut(&key) {
                None => {
                    out.insert(key, CellExtremes::seed(mm, pb, &witness()));
                }
                Some(cell) => {
                    // Enumeration is lexicographic, so a later equal value never wins.
                    if mm < cell.min_mm.value {
                        cell.min_mm = Extreme { value: mm, witness: witness() };
                    }
                    if mm > cell.max_mm.value {
                        cell.max_mm = Extreme { value: mm, witness: witness() };
                    }
                    if pb < cell.min_pb.value {
                        cell.min_pb = Extreme { value: pb, witness: witness() };
                    }
                    if pb > cell.max_pb.value {
                        cell.max_pb = Extreme { value: pb, witness: witness() };
                    }
                    if cell.zero.is_none() && mm == 0 && pb == 0 {
                        cell.zero = Some(witness());
                    }
                }
            }
        }
    }

    fn walk(&self, xs: &mut Vec<u32>, out: &mut HashMap<CellKey, CellExtremes>) {
        if xs.len() == self.n {
            self.score(xs, out);
            return;
        }
        let from = *xs.last().expect("walk starts with a leading share");
        for x in from..=self.d {
            xs.push(x);
            self.walk(xs, out);
            xs.pop();
        }
    }
}

/// Extremes of MM and PB for every (V, S) reachable on the lattice.
pub fn enumerate_extremes(spec: LatticeSpec, budget: u128) -> Result<AchievabilityTable, OracleError> {
    spec.check_budget(budget)?;
    let scorer = Scorer { n: spec.n, d: spec.d, split_ties: spec.split_ties };
    let cells = (0..=spec.d)
        .into_par_iter()
        .map(|first| {
            let mut local = HashMap::new();
            let mut xs = Vec::with_capacity(spec.n);
            xs.push(first);
            scorer.walk(&mut xs, &mut local);
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                match a.get_mut(&k) {
                    Some(cell) => cell.absorb(v),
                    None => {
                        a.insert(k, v);
                    }
                }
            }
            a
        });
    Ok(AchievabilityTable { spec, cells: cells.into_iter().collect() })
}

/// Same extremes by brute force over ordered tuples and per-district tie
/// flags. Only for spot checks at tiny sizes.
pub fn enumerate_tuples(spec: LatticeSpec) -> BTreeMap<CellKey, [Rational; 4]> {
    let n = spec.n;
    let d = spec.d;
    let mut best: BTreeMap<CellKey, [i64; 4]> = BTreeMap::new();
    let mut xs = vec![0u32; n];
    loop {
        let total: u64 = xs.iter().map(|&x| x as u64).sum();
        let mut sorted = xs.clone();
        sorted.sort_unstable();
        let mid = n / 2;
        let med2n = if n % 2 == 1 {
            2 * n as i64 * sorted[mid] as i64
        } else {
            n as i64 * (sorted[mid - 1] + sorted[mid]) as i64
        };
        let mm = med2n - 2 * total as i64;
        let pb: i64 = xs
            .iter()
            .map(|&x| {
                let s = x as i64 * n as i64;
                (s > total as i64) as i64 - (s < total as i64) as i64
            })
            .sum();
        let halves: Vec<usize> = (0..n).filter(|&i| 2 * xs[i] == d).collect();
        let flag_sets = if spec.split_ties { 1u32 << halves.len() } else { 1 };
        for mask in 0..flag_sets {
            let won = xs.iter().filter(|&&x| 2 * x > d).count() + mask.count_ones() as usize;
            let e = best.entry((total, won)).or_insert([mm, mm, pb, pb]);
            e[0] = e[0].min(mm);
            e[1] = e[1].max(mm);
            e[2] = e[2].min(pb);
            e[3] = e[3].max(pb);
        }
        let mut i = 0;
        loop {
            if i == n {
                let scale_mm = 2 * n as i64 * d as i64;
                let scale_pb = 2 * n as i64;
                return best
                    .into_iter()
                    .map(|(k, v)| {
                        (
                            k,
                            [
                                ratio(v[0], scale_mm),
                                ratio(v[1], scale_mm),
                                ratio(v[2], scale_pb),
                                ratio(v[3], scale_pb),
                            ],
                        )
                    })
                    .collect();
            }
            if xs[i] < d {
                xs[i] += 1;
                break;
            }
            xs[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{mean_median, partisan_bias};
    use crate::rational::{half, int};

    #[test]
    fn multisets_match_tuples() {
        let spec = LatticeSpec::new(3, 6);
        let table = enumerate_extremes(spec, DEFAULT_BUDGET).unwrap();
        assert_eq!(table.values(), enumerate_tuples(spec));
    }

    #[test]
    fn single_district_is_flat() {
        let table = enumerate_extremes(LatticeSpec::new(1, 8), DEFAULT_BUDGET).unwrap();
        for c in table.cells.values() {
            assert_eq!((c.min_mm.value, c.max_mm.value, c.min_pb.value, c.max_pb.value), (0, 0, 0, 0));
        }
    }

    #[test]
    fn witnesses_realize_their_values() {
        let spec = LatticeSpec::new(4, 10);
        let table = enumerate_extremes(spec, DEFAULT_BUDGET).unwrap();
        for (k, c) in &table.cells {
            for e in [&c.min_mm, &c.max_mm] {
                let el = e.witness.to_election(spec.d);
                assert_eq!(mean_median(&el), table.mm_value(e));
                assert_eq!(el.seat_share().s(), table.s(k));
                assert_eq!(el.vote_share(), table.v(k));
            }
            for e in [&c.min_pb, &c.max_pb] {
                assert_eq!(partisan_bias(&e.witness.to_election(spec.d)), table.pb_value(e));
            }
        }
    }

    #[test]
    fn small_case_max_pb() {
        let table = enumerate_extremes(LatticeSpec::new(3, 10), DEFAULT_BUDGET).unwrap();
        let key = (15, 2);
        assert_eq!(table.v(&key), half());
        assert_eq!(table.pb_value(&table.cells[&key].max_pb), int(1) / int(6));
    }

    #[test]
    fn budget_refusal_reports_size() {
        let spec = LatticeSpec::new(10, 100);
        match enumerate_extremes(spec, DEFAULT_BUDGET) {
            Err(OracleError::Budget { required, .. }) => assert_eq!(required, spec.size()),
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
