// Containment and tightness of range formulas against lattice extremes.

use std::fmt;
use std::io::Write;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    compare_zero_scan, enumerate_extremes, probe_extremes, AchievabilityTable, LatticeSpec, OracleError, ZeroScan,
    ZeroScanReport,
};
use crate::bounds::literal::{literal_half_row, HalfRowBoundary, LiteralRanges, OddUpper};
use crate::bounds::{MetricInterval, RangeFormulas};
use crate::constructors::{construct_mm_extremal, construct_pb_extremal, Extremum};
use crate::election::{Election, SvPair};
use crate::metrics::{mean_median, partisan_bias};
use crate::rational::{half, int, ratio, Exact, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckedMetric {
    Mm,
    Pb,
}

impl fmt::Display for CheckedMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mm => "MM",
            Self::Pb => "PB",
        })
    }
}

/// How a formula endpoint relates to the lattice extreme on its side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndStatus {
    /// Within 2/D of the lattice extreme (or the endpoint is open).
    Tight,
    /// Farther than 2/D, but a constructor hits the endpoint exactly with
    /// shares that the lattice cannot represent.
    Explained,
    Unexplained,
}

/// One metric at one (V, S, n) cell.
#[derive(Debug, Clone, Serialize)]
pub struct CellCheck {
    pub n: usize,
    pub d: u32,
    pub v: String,
    pub s: String,
    pub metric: CheckedMetric,
    pub lattice_min: String,
    pub lattice_max: String,
    /// Formula interval, or the formula's error message.
    pub formula: String,
    pub contained: bool,
    pub lower: EndStatus,
    pub upper: EndStatus,
}

impl CellCheck {
    pub fn passed(&self) -> bool {
        self.contained && self.lower != EndStatus::Unexplained && self.upper != EndStatus::Unexplained
    }

    pub fn explained(&self) -> bool {
        self.lower == EndStatus::Explained || self.upper == EndStatus::Explained
    }
}

impl fmt::Display for CellCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} D={} V={} S={} {}: lattice [{}, {}] formula {} contained={} lower={:?} upper={:?}",
            self.n,
            self.d,
            self.v,
            self.s,
            self.metric,
            self.lattice_min,
            self.lattice_max,
            self.formula,
            self.contained,
            self.lower,
            self.upper
        )
    }
}

fn representable(e: &Election, d: u32) -> bool {
    let d = int(d as i64);
    e.shares().all(|s| (s * &d).is_integer())
}

fn end_status(
    pair: &SvPair,
    d: u32,
    metric: CheckedMetric,
    which: Extremum,
    formula_end: &Rational,
    closed: bool,
    lattice_end: &Rational,
) -> EndStatus {
    let gap = (formula_end - lattice_end).abs();
    if !closed || gap <= ratio(2, d as i64) {
        return EndStatus::Tight;
    }
    let witness = match metric {
        CheckedMetric::Mm => construct_mm_extremal(pair, which),
        CheckedMetric::Pb => construct_pb_extremal(pair, which),
    };
    let Ok(e) = witness else { return EndStatus::Unexplained };
    let value = match metric {
        CheckedMetric::Mm => mean_median(&e),
        CheckedMetric::Pb => partisan_bias(&e),
    };
    let hits = value == *formula_end && e.vote_share() == *pair.v() && e.seats_won() == pair.won();
    if hits && !representable(&e, d) {
        EndStatus::Explained
    } else {
        EndStatus::Unexplained
    }
}

/// Check one metric at one pair given the lattice extremes `[lo, hi]`.
/// Returns `None` when the formulas do not apply (MM with n < 3).
pub fn check_cell(
    pair: &SvPair,
    d: u32,
    metric: CheckedMetric,
    lattice: (&Rational, &Rational),
    formulas: &dyn RangeFormulas,
) -> Option<CellCheck> {
    if metric == CheckedMetric::Mm && pair.n() < 3 {
        return None;
    }
    let interval = match metric {
        CheckedMetric::Mm => formulas.mm_fixed(pair),
        CheckedMetric::Pb => formulas.pb_fixed(pair),
    };
    let (lo, hi) = lattice;
    let base = |formula: String, contained, lower, upper| CellCheck {
        n: pair.n(),
        d,
        v: Exact(pair.v()).to_string(),
        s: Exact(&pair.s()).to_string(),
        metric,
        lattice_min: Exact(lo).to_string(),
        lattice_max: Exact(hi).to_string(),
        formula,
        contained,
        lower,
        upper,
    };
    Some(match interval {
        Err(e) => base(format!("error: {e}"), false, EndStatus::Unexplained, EndStatus::Unexplained),
        Ok(i) => {
            let contained = i.contains(lo) && i.contains(hi);
            let lower = end_status(pair, d, metric, Extremum::Min, i.lo(), i.lo_closed(), lo);
            let upper = end_status(pair, d, metric, Extremum::Max, i.hi(), i.hi_closed(), hi);
            base(i.to_string(), contained, lower, upper)
        }
    })
}

/// Summary of one lattice checked against one formula provider.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub n: usize,
    pub d: u32,
    pub provider: String,
    pub cells: usize,
    pub checks: usize,
    pub containment_failures: usize,
    pub unexplained_gaps: usize,
    pub explained_gaps: usize,
    /// Every failing check.
    pub failures: Vec<CellCheck>,
    /// Checks whose gap was explained by a constructor witness.
    pub explained: Vec<CellCheck>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check every cell of a table: lattice extremes must lie in the formula
/// interval, and each closed endpoint must be within 2/D of the lattice or
/// explained by an exact off-lattice constructor witness.
pub fn verify_bounds(table: &AchievabilityTable, formulas: &dyn RangeFormulas) -> LatticeReport {
    let d = table.spec.d;
    let checks: Vec<CellCheck> = table
        .cells
        .par_iter()
        .flat_map_iter(|(key, c)| {
            let pair = table.pair(key);
            let mm = (table.mm_value(&c.min_mm), table.mm_value(&c.max_mm));
            let pb = (table.pb_value(&c.min_pb), table.pb_value(&c.max_pb));
            [
                check_cell(&pair, d, CheckedMetric::Mm, (&mm.0, &mm.1), formulas),
                check_cell(&pair, d, CheckedMetric::Pb, (&pb.0, &pb.1), formulas),
            ]
            .into_iter()
            .flatten()
        })
        .collect();
    summarize(table.spec.n, d, formulas.name(), table.cells.len(), checks)
}

fn summarize(n: usize, d: u32, provider: &str, cells: usize, checks: Vec<CellCheck>) -> LatticeReport {
    let containment_failures = checks.iter().filter(|c| !c.contained).count();
    let count = |s: EndStatus| checks.iter().map(|c| (c.lower == s) as usize + (c.upper == s) as usize).sum();
    LatticeReport {
        n,
        d,
        provider: provider.to_string(),
        cells,
        checks: checks.len(),
        containment_failures,
        unexplained_gaps: count(EndStatus::Unexplained),
        explained_gaps: count(EndStatus::Explained),
        failures: checks.iter().filter(|c| !c.passed()).cloned().collect(),
        explained: checks.iter().filter(|c| c.passed() && c.explained()).cloned().collect(),
    }
}

/// (pair, D) probes at the worked-example elections: ten districts on a
/// 1/100 grid, or eleven on a 1/1000 grid for the 11-district pair.
pub fn table_probe_pairs() -> Vec<(SvPair, u32)> {
    let ten = |v: Rational, s: Rational| (SvPair::new(v, &s, 10).expect("valid probe pair"), 100);
    let eleven = |won: i64| (SvPair::new(ratio(3, 5), &ratio(won, 11), 11).expect("valid probe pair"), 1000);
    vec![
        ten(ratio(3, 5), ratio(9, 10)),
        ten(ratio(12, 25), ratio(1, 10)),
        ten(ratio(12, 25), half()),
        ten(ratio(12, 25), ratio(9, 10)),
        ten(ratio(251, 500), ratio(3, 5)),
        ten(ratio(383, 500), ratio(3, 5)),
        ten(ratio(7, 10), ratio(9, 10)),
        eleven(6),
        eleven(10),
        ten(half(), ratio(3, 5)),
        ten(half(), ratio(9, 10)),
        ten(int(1), int(1)),
    ]
}

fn probe_checks(formulas: &dyn RangeFormulas) -> Vec<CellCheck> {
    table_probe_pairs()
        .par_iter()
        .flat_map_iter(|(pair, d)| {
            let Some(p) = probe_extremes(pair, *d) else { return Vec::new() };
            [
                check_cell(pair, *d, CheckedMetric::Mm, (&p.min_mm, &p.max_mm), formulas),
                check_cell(pair, *d, CheckedMetric::Pb, (&p.min_pb, &p.max_pb), formulas),
            ]
            .into_iter()
            .flatten()
            .collect()
        })
        .collect()
}

/// Violations of one odd-n upper-bound variant on one lattice.
#[derive(Debug, Clone, Serialize)]
pub struct OddUpperRow {
    pub variant: String,
    pub n: usize,
    pub d: u32,
    pub violations: usize,
    /// First violating cell, if any.
    pub example: Option<String>,
}

/// The S = ½ boundary V = (n − 1)/(2n) under both row placements.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryRow {
    pub n: usize,
    pub d: u32,
    pub v: String,
    pub inclusive: String,
    pub exclusive: String,
    pub lattice_min: String,
    pub lattice_max: String,
    pub inclusive_matches: bool,
    pub exclusive_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmbiguityReport {
    pub odd_upper: Vec<OddUpperRow>,
    /// Variant with no violations on any checked lattice, if exactly one.
    pub odd_upper_supported: Option<String>,
    pub boundary: Vec<BoundaryRow>,
    pub boundary_conclusion: String,
}

/// Settle the two formula ambiguities against the given tables: the odd-n
/// MM upper bound (odd-n tables) and the S = ½ row boundary (even-n tables
/// whose lattice contains V = (n − 1)/(2n)).
pub fn resolve_ambiguities(tables: &[&AchievabilityTable]) -> AmbiguityReport {
    let mut odd_upper = Vec::new();
    for variant in [OddUpper::Stated, OddUpper::EvenForm] {
        let provider = LiteralRanges::new(variant);
        for t in tables.iter().filter(|t| t.spec.n % 2 == 1 && t.spec.n >= 3) {
            let mut violations = 0;
            let mut example = None;
            for (key, c) in &t.cells {
                let pair = t.pair(key);
                if pair.s() == half() {
                    continue;
                }
                let Ok(i) = provider.mm_fixed(&pair) else { continue };
                let (lo, hi) = (t.mm_value(&c.min_mm), t.mm_value(&c.max_mm));
                if !i.contains(&lo) || !i.contains(&hi) {
                    violations += 1;
                    example.get_or_insert_with(|| {
                        format!("V={} S={}: lattice [{}, {}] vs {}", Exact(pair.v()), Exact(&pair.s()), Exact(&lo), Exact(&hi), i)
                    });
                }
            }
            odd_upper.push(OddUpperRow { variant: provider.name().to_string(), n: t.spec.n, d: t.spec.d, violations, example });
        }
    }
    let clean: Vec<&str> = ["literal", "literal-even-form"]
        .into_iter()
        .filter(|name| odd_upper.iter().filter(|r| r.variant == *name).all(|r| r.violations == 0))
        .collect();
    let odd_upper_supported = (clean.len() == 1 && !odd_upper.is_empty()).then(|| clean[0].to_string());

    let mut boundary = Vec::new();
    for t in tables.iter().filter(|t| t.spec.n % 2 == 0 && t.spec.n >= 4) {
        let n = t.spec.n as i64;
        let v = ratio(n - 1, 2 * n);
        let Some((_, c)) = t.cells.iter().find(|(k, _)| t.v(k) == v && t.s(k) == half()) else { continue };
        let (lo, hi) = (t.mm_value(&c.min_mm), t.mm_value(&c.max_mm));
        let step = ratio(2, t.spec.d as i64);
        let matches = |i: &MetricInterval| {
            i.contains(&lo) && i.contains(&hi) && (i.lo() - &lo).abs() <= step && (i.hi() - &hi).abs() <= step
        };
        let inc = literal_half_row(&v, n, HalfRowBoundary::Inclusive).expect("nonempty row");
        let exc = literal_half_row(&v, n, HalfRowBoundary::Exclusive).expect("nonempty row");
        boundary.push(BoundaryRow {
            n: t.spec.n,
            d: t.spec.d,
            v: Exact(&v).to_string(),
            inclusive: inc.to_string(),
            exclusive: exc.to_string(),
            lattice_min: Exact(&lo).to_string(),
            lattice_max: Exact(&hi).to_string(),
            inclusive_matches: matches(&inc),
            exclusive_matches: matches(&exc),
        });
    }
    let boundary_conclusion = if boundary.is_empty() {
        "no even-n lattice contains the boundary point".to_string()
    } else if boundary.iter().all(|b| b.inclusive_matches && b.exclusive_matches && b.inclusive == b.exclusive) {
        "both placements give the same interval at the boundary and the lattice agrees with it within 2/D; the choice is immaterial".to_string()
    } else if boundary.iter().all(|b| b.inclusive_matches) {
        "the lattice supports the inclusive placement".to_string()
    } else if boundary.iter().all(|b| b.exclusive_matches) {
        "the lattice supports the exclusive placement".to_string()
    } else {
        "neither placement matches the lattice at every boundary point".to_string()
    };
    AmbiguityReport { odd_upper, odd_upper_supported, boundary, boundary_conclusion }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    /// (n, D) lattices to enumerate.
    pub suite: Vec<(usize, u32)>,
    pub budget: u128,
    /// Also run the single-pair probes at the worked-example pairs.
    pub probes: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { suite: vec![(3, 20), (4, 20), (5, 12), (6, 10)], budget: super::DEFAULT_BUDGET, probes: true }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub provider: String,
    pub lattices: Vec<LatticeReport>,
    pub probes: Option<LatticeReport>,
    pub zero_scans: Vec<ZeroScanReport>,
    pub ambiguities: AmbiguityReport,
    #[serde(skip)]
    pub tables: Vec<AchievabilityTable>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lattices.iter().all(LatticeReport::passed)
            && self.probes.as_ref().is_none_or(LatticeReport::passed)
            && self.zero_scans.iter().all(ZeroScanReport::passed)
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "formula provider: {}", self.provider)?;
        writeln!(w, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })?;
        let reports = self
            .lattices
            .iter()
            .map(|r| (format!("lattice n={} D={}", r.n, r.d), r))
            .chain(self.probes.iter().map(|r| ("worked-example probes".to_string(), r)));
        for (label, r) in reports {
            writeln!(
                w,
                "{label}: {} cells, {} checks, {} containment failures, {} unexplained gaps, {} explained gaps",
                r.cells, r.checks, r.containment_failures, r.unexplained_gaps, r.explained_gaps
            )?;
            for f in &r.failures {
                writeln!(w, "  FAIL {f}")?;
            }
        }
        for z in &self.zero_scans {
            writeln!(
                w,
                "zero scan n={} D={}: {} points, {} outside the region, {} fixed-n disagreements",
                z.n,
                z.d,
                z.points,
                z.outside_region.len(),
                z.fixed_n_disagreements.len()
            )?;
            for (v, s) in z.outside_region.iter().chain(&z.fixed_n_disagreements) {
                writeln!(w, "  FAIL zero at V={v} S={s}")?;
            }
        }
        let a = &self.ambiguities;
        writeln!(w, "odd-n MM upper bound:")?;
        for r in &a.odd_upper {
            writeln!(w, "  {} n={} D={}: {} violations{}", r.variant, r.n, r.d, r.violations,
                r.example.as_ref().map(|e| format!(" (e.g. {e})")).unwrap_or_default())?;
        }
        match &a.odd_upper_supported {
            Some(v) => writeln!(w, "  enumeration supports: {v}")?,
            None => writeln!(w, "  enumeration does not single out one variant")?,
        }
        writeln!(w, "S = 1/2 row boundary at V = (n-1)/(2n):")?;
        for b in &a.boundary {
            writeln!(
                w,
                "  n={} D={} V={}: inclusive {} exclusive {} lattice [{}, {}]",
                b.n, b.d, b.v, b.inclusive, b.exclusive, b.lattice_min, b.lattice_max
            )?;
        }
        writeln!(w, "  {}", a.boundary_conclusion)?;
        Ok(())
    }
}

/// Enumerate every lattice in the suite, check the formulas on each, run
/// the equal-turnout zero comparison and settle the formula ambiguities.
pub fn run_verification(config: &VerifyConfig, formulas: &dyn RangeFormulas) -> Result<VerifyReport, OracleError> {
    for &(n, d) in &config.suite {
        LatticeSpec::new(n, d).check_budget(config.budget)?;
    }
    let mut tables = Vec::with_capacity(config.suite.len());
    for &(n, d) in &config.suite {
        tables.push(enumerate_extremes(LatticeSpec::new(n, d), config.budget)?);
    }
    let lattices = tables.iter().map(|t| verify_bounds(t, formulas)).collect();
    let zero_scans = tables
        .iter()
        .map(|t| {
            let points = t.cells.iter().filter(|(_, c)| c.zero.is_some()).map(|(k, _)| (t.v(k), k.1)).collect();
            compare_zero_scan(&ZeroScan { spec: t.spec, turnout_ratio: None, points })
        })
        .collect();
    let probes = config.probes.then(|| {
        let checks = probe_checks(formulas);
        let pairs = table_probe_pairs().len();
        summarize(0, 0, formulas.name(), pairs, checks)
    });
    let refs: Vec<&AchievabilityTable> = tables.iter().collect();
    let ambiguities = resolve_ambiguities(&refs);
    Ok(VerifyReport { provider: formulas.name().to_string(), lattices, probes, zero_scans, ambiguities, tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::SharpRanges;
    use num_traits::Zero;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn sharp_formulas_pass_small_lattice() {
        let table = enumerate_extremes(LatticeSpec::new(3, 6), DEFAULT_BUDGET).unwrap();
        let r = verify_bounds(&table, &SharpRanges);
        assert!(r.passed(), "{:#?}", r.failures);
        assert!(r.checks > 0);
    }

    #[test]
    fn half_vote_pb_gap_is_explained() {
        // n = 3, V = ½, S = ⅔: max PB 1/6 needs shares off a coarse grid.
        let pair = SvPair::new(half(), &ratio(2, 3), 3).unwrap();
        let c = check_cell(&pair, 100, CheckedMetric::Pb, (&Rational::zero(), &Rational::zero()), &SharpRanges).unwrap();
        assert!(c.contained);
        assert_eq!(c.upper, EndStatus::Explained);
    }

    #[test]
    fn ambiguities_on_small_tables() {
        let t3 = enumerate_extremes(LatticeSpec::new(3, 20), DEFAULT_BUDGET).unwrap();
        let t4 = enumerate_extremes(LatticeSpec::new(4, 20), DEFAULT_BUDGET).unwrap();
        let a = resolve_ambiguities(&[&t3, &t4]);
        assert_eq!(a.odd_upper_supported.as_deref(), Some("literal"));
        assert_eq!(a.boundary.len(), 1);
        assert_eq!(a.boundary[0].inclusive, "[-1/8, 1/8]");
        assert!(a.boundary[0].inclusive_matches && a.boundary[0].exclusive_matches);
    }
}
