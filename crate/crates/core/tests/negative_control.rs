// The oracle must reject range formulas that are wrong, and say where.

use partisan_symmetry::bounds::{BoundsError, MetricInterval, RangeFormulas, SharpRanges};
use partisan_symmetry::election::SvPair;
use partisan_symmetry::oracle::{enumerate_extremes, verify_bounds, CheckedMetric, EndStatus, LatticeSpec, DEFAULT_BUDGET};
use partisan_symmetry::rational::{ratio, Exact};

/// Sharp ranges with the MM upper end moved by `shift` at every pair with V = `at`.
struct Shifted {
    at: (i64, i64),
    shift: (i64, i64),
}

impl RangeFormulas for Shifted {
    fn name(&self) -> &str {
        "shifted"
    }

    fn pb_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError> {
        SharpRanges.pb_fixed(p)
    }

    fn mm_fixed(&self, p: &SvPair) -> Result<MetricInterval, BoundsError> {
        let i = SharpRanges.mm_fixed(p)?;
        if *p.v() != ratio(self.at.0, self.at.1) || i.forced_value().is_some() {
            return Ok(i);
        }
        MetricInterval::new(i.lo().clone(), i.lo_closed(), i.hi() + ratio(self.shift.0, self.shift.1), i.hi_closed())
    }
}

#[test]
fn shrunken_upper_end_is_a_containment_failure_at_that_cell() {
    let table = enumerate_extremes(LatticeSpec::new(3, 20), DEFAULT_BUDGET).unwrap();
    assert!(verify_bounds(&table, &SharpRanges).passed());
    let report = verify_bounds(&table, &Shifted { at: (3, 5), shift: (-1, 40) });
    assert!(!report.passed());
    assert!(report.containment_failures > 0);
    for f in &report.failures {
        assert_eq!(f.metric, CheckedMetric::Mm, "{f}");
        assert_eq!(f.v, Exact(&ratio(3, 5)).to_string(), "{f}");
        assert!(!f.contained, "{f}");
    }
}

#[test]
fn inflated_upper_end_is_an_unexplained_gap() {
    let table = enumerate_extremes(LatticeSpec::new(4, 20), DEFAULT_BUDGET).unwrap();
    let report = verify_bounds(&table, &Shifted { at: (11, 20), shift: (1, 4) });
    assert!(!report.passed());
    assert_eq!(report.containment_failures, 0);
    assert!(report.unexplained_gaps > 0);
    for f in &report.failures {
        assert_eq!(f.v, "11/20", "{f}");
        assert_eq!(f.upper, EndStatus::Unexplained, "{f}");
    }
}
