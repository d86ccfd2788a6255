// Per-cell evaluation of range endpoints and zero regions over the unit square.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::{
    mm_range_fixed, mm_range_limit, pb_range_fixed, pb_range_limit, turnout_zero_contains, zero_achievable_at,
    zero_region_contains, BoundsError, MetricInterval,
};
use crate::election::{check_feasible, SvPair, Turnout};
use crate::oracle::DeclinationZeroScan;
use crate::rational::{half, int, ratio, Exact, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RasterMetric {
    Mm,
    Pb,
    Eg,
    Dec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RasterKind {
    Min,
    Max,
    Zero,
}

impl FromStr for RasterMetric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "mm" => Ok(Self::Mm),
            "pb" => Ok(Self::Pb),
            "eg" => Ok(Self::Eg),
            "dec" => Ok(Self::Dec),
            other => Err(format!("unknown metric '{other}' (expected mm, pb, eg or dec)")),
        }
    }
}

impl FromStr for RasterKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(Self::Min),
            "max" => Ok(Self::Max),
            "zero" => Ok(Self::Zero),
            other => Err(format!("unknown raster kind '{other}' (expected min, max or zero)")),
        }
    }
}

impl fmt::Display for RasterMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mm => "mm",
            Self::Pb => "pb",
            Self::Eg => "eg",
            Self::Dec => "dec",
        })
    }
}

impl fmt::Display for RasterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Min => "min",
            Self::Max => "max",
            Self::Zero => "zero",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RasterSpec {
    pub metric: RasterMetric,
    pub kind: RasterKind,
    /// Points per axis, including both ends of [0, 1].
    pub grid: usize,
    /// District count; rows become the seat shares k/n.
    pub n: Option<usize>,
    /// Turnout ratio bound for the MM/PB zero region.
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub turnout_ratio: Option<Rational>,
}

impl RasterSpec {
    pub fn new(metric: RasterMetric, kind: RasterKind) -> Self {
        Self { metric, kind, grid: 201, n: None, turnout_ratio: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellValue {
    Null,
    Endpoint { value: Rational, lo_closed: bool, hi_closed: bool },
    Flag(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterCell {
    pub v: Rational,
    pub s: Rational,
    pub value: CellValue,
}

#[derive(Debug, Clone)]
pub struct Raster {
    pub spec: RasterSpec,
    pub columns: Vec<Rational>,
    pub rows: Vec<Rational>,
    /// Row-major: `cells[row * columns.len() + col]`.
    pub cells: Vec<RasterCell>,
    /// Set when cells come from a discretised search rather than formulas.
    pub approximate: bool,
}

impl Raster {
    pub fn cell(&self, row: usize, col: usize) -> &RasterCell {
        &self.cells[row * self.columns.len() + col]
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["v", "s", "value", "closed_lo", "closed_hi"])?;
        for c in &self.cells {
            let (v, s) = (Exact(&c.v).to_string(), Exact(&c.s).to_string());
            let rest: [String; 3] = match &c.value {
                CellValue::Null => Default::default(),
                CellValue::Endpoint { value, lo_closed, hi_closed } => {
                    [Exact(value).to_string(), lo_closed.to_string(), hi_closed.to_string()]
                }
                CellValue::Flag(b) => [b.to_string(), String::new(), String::new()],
            };
            w.write_record([v, s, rest[0].clone(), rest[1].clone(), rest[2].clone()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn axis(grid: usize) -> Vec<Rational> {
    let last = grid as i64 - 1;
    (0..=last).map(|k| ratio(k, last)).collect()
}

fn endpoint(i: &MetricInterval, kind: RasterKind) -> CellValue {
    let value = match kind {
        RasterKind::Min => i.lo().clone(),
        _ => i.hi().clone(),
    };
    CellValue::Endpoint { value, lo_closed: i.lo_closed(), hi_closed: i.hi_closed() }
}

/// Evaluate one range endpoint or zero-membership per cell.
///
/// Without `n` the rows are an even grid and the limit ranges are used. With
/// `n` the rows are the seat shares k/n and the fixed-n ranges are used.
/// Infeasible cells are `Null`.
pub fn region_raster(spec: &RasterSpec) -> Result<Raster, BoundsError> {
    if spec.grid < 2 {
        return Err(BoundsError::Grid);
    }
    if matches!(spec.metric, RasterMetric::Eg | RasterMetric::Dec) && spec.kind != RasterKind::Zero {
        return Err(BoundsError::Unsupported("EG and declination rasters exist only for the zero region"));
    }
    if let Some(c) = &spec.turnout_ratio {
        if *c < int(1) {
            return Err(BoundsError::TurnoutRatio(Exact(c).to_string()));
        }
    }
    let columns = axis(spec.grid);
    let rows = match spec.n {
        Some(0) => return Err(BoundsError::Grid),
        Some(n) => (0..=n as i64).map(|k| ratio(k, n as i64)).collect(),
        None => axis(spec.grid),
    };
    let dec = (spec.metric == RasterMetric::Dec).then(|| DeclinationZeroScan::standard().run());
    let cell_width = ratio(1, 2 * (spec.grid as i64 - 1));
    let mut cells = Vec::with_capacity(rows.len() * columns.len());
    for s in &rows {
        for v in &columns {
            let value = if let Some(found) = &dec {
                CellValue::Flag(found.near(v, s, &cell_width))
            } else {
                evaluate(spec, v, s)?
            };
            cells.push(RasterCell { v: v.clone(), s: s.clone(), value });
        }
    }
    Ok(Raster { spec: spec.clone(), columns, rows, cells, approximate: dec.is_some() })
}

fn evaluate(spec: &RasterSpec, v: &Rational, s: &Rational) -> Result<CellValue, BoundsError> {
    if let (RasterKind::Zero, Some(c)) = (spec.kind, &spec.turnout_ratio) {
        if spec.metric == RasterMetric::Eg {
            return Err(BoundsError::Unsupported("the EG zero line assumes equal turnout"));
        }
        return Ok(CellValue::Flag(turnout_zero_contains(v, s, c)?));
    }
    if check_feasible(v, s, Turnout::Equal).is_err() {
        return Ok(CellValue::Null);
    }
    if spec.metric == RasterMetric::Eg {
        return Ok(CellValue::Flag((s - v * int(2) + half()).is_zero()));
    }
    let pair = spec.n.map(|n| SvPair::new(v.clone(), s, n).expect("rows are multiples of 1/n"));
    if spec.kind == RasterKind::Zero {
        return Ok(CellValue::Flag(match &pair {
            Some(p) => zero_achievable_at(p),
            None => zero_region_contains(v, s),
        }));
    }
    let interval = match (spec.metric, &pair) {
        (RasterMetric::Pb, None) => pb_range_limit(v, s)?,
        (RasterMetric::Pb, Some(p)) => pb_range_fixed(p)?,
        (RasterMetric::Mm, None) => mm_range_limit(v, s)?,
        (RasterMetric::Mm, Some(p)) => mm_range_fixed(p)?,
        _ => unreachable!("EG and declination handled above"),
    };
    Ok(endpoint(&interval, spec.kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pb_max_cell() {
        let mut spec = RasterSpec::new(RasterMetric::Pb, RasterKind::Max);
        spec.grid = 11;
        let r = region_raster(&spec).unwrap();
        let cell = r.cell(9, 6);
        assert_eq!((cell.v.clone(), cell.s.clone()), (ratio(3, 5), ratio(9, 10)));
        assert_eq!(cell.value, CellValue::Endpoint { value: ratio(2, 5), lo_closed: false, hi_closed: true });
        assert_eq!(r.cell(10, 0).value, CellValue::Null);
    }

    #[test]
    fn eg_zero_line() {
        let mut spec = RasterSpec::new(RasterMetric::Eg, RasterKind::Zero);
        spec.grid = 5;
        let r = region_raster(&spec).unwrap();
        assert_eq!(r.cell(4, 3).value, CellValue::Flag(true));
        assert_eq!(r.cell(4, 4).value, CellValue::Flag(false));
        assert!(region_raster(&RasterSpec::new(RasterMetric::Eg, RasterKind::Max)).is_err());
    }

    #[test]
    fn zero_masks_agree() {
        let mut a = RasterSpec::new(RasterMetric::Mm, RasterKind::Zero);
        a.grid = 41;
        let mut b = a.clone();
        b.metric = RasterMetric::Pb;
        let (ra, rb) = (region_raster(&a).unwrap(), region_raster(&b).unwrap());
        assert!(ra.cells.iter().zip(&rb.cells).all(|(x, y)| x.value == y.value));
    }

    #[test]
    fn fixed_rows_follow_n() {
        let mut spec = RasterSpec::new(RasterMetric::Mm, RasterKind::Min);
        spec.grid = 3;
        spec.n = Some(4);
        let r = region_raster(&spec).unwrap();
        assert_eq!(r.rows.len(), 5);
        let mut csv = Vec::new();
        r.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("v,s,value,closed_lo,closed_hi\n"));
        assert_eq!(text.lines().count(), 1 + 15);
    }
}
