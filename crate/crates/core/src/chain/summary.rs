// Per-seat-count metric ranges and the acceptability band.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::PlanRecord;
use crate::bounds::mm_limit_envelope;
use crate::rational::{format_decimal, half, int, ratio, serde_rational, Exact, Rational};

/// Fraction of a metric's extreme range treated as acceptable.
pub fn band_fraction() -> Rational {
    ratio(16, 100)
}

/// S lattice used to approximate the MM envelope at the run's vote share.
pub const MM_ENVELOPE_GRID: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricStats {
    #[serde(with = "serde_rational")]
    pub min: Rational,
    #[serde(with = "serde_rational")]
    pub max: Rational,
    #[serde(with = "serde_rational")]
    pub mean: Rational,
}

impl MetricStats {
    fn of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Self> {
        let mut it = values.into_iter();
        let first = it.next()?.clone();
        let (mut min, mut max, mut sum, mut count) = (first.clone(), first.clone(), first, 1i64);
        for v in it {
            if *v < min {
                min = v.clone();
            }
            if *v > max {
                max = v.clone();
            }
            sum += v;
            count += 1;
        }
        Some(Self { min, max, mean: sum / int(count) })
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.min <= other.max && other.min <= self.max
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeatBucket {
    pub seats: usize,
    pub plans: usize,
    pub mm: MetricStats,
    pub pb: MetricStats,
    pub eg: MetricStats,
    /// None when declination is undefined for every plan in the bucket.
    pub dec: Option<MetricStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BandMetric {
    Mm,
    Pb,
    Eg,
    Dec,
}

impl BandMetric {
    pub const ALL: [BandMetric; 4] = [BandMetric::Mm, BandMetric::Pb, BandMetric::Eg, BandMetric::Dec];

    pub fn label(self) -> &'static str {
        match self {
            Self::Mm => "MM",
            Self::Pb => "PB",
            Self::Eg => "EG",
            Self::Dec => "DEC",
        }
    }

    pub fn stats(self, b: &SeatBucket) -> Option<&MetricStats> {
        match self {
            Self::Mm => Some(&b.mm),
            Self::Pb => Some(&b.pb),
            Self::Eg => Some(&b.eg),
            Self::Dec => b.dec.as_ref(),
        }
    }
}

/// `fraction` of a metric's extreme range: [fraction·inf, fraction·sup].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcceptabilityBand {
    pub metric: BandMetric,
    #[serde(with = "serde_rational")]
    pub inf: Rational,
    #[serde(with = "serde_rational")]
    pub sup: Rational,
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

/// Bands for each metric. MM uses the limit envelope at `v`; PB and EG use
/// ±½ and declination ±1.
pub fn acceptability_bands(v: &Rational) -> Vec<AcceptabilityBand> {
    let f = band_fraction();
    let (mm_lo, mm_hi) = mm_limit_envelope(v, MM_ENVELOPE_GRID).expect("every vote share has a feasible seat share");
    let extremes = [
        (BandMetric::Mm, mm_lo, mm_hi),
        (BandMetric::Pb, -half(), half()),
        (BandMetric::Eg, -half(), half()),
        (BandMetric::Dec, int(-1), int(1)),
    ];
    extremes
        .into_iter()
        .map(|(metric, inf, sup)| AcceptabilityBand { metric, lo: &f * &inf, hi: &f * &sup, inf, sup })
        .collect()
}

/// Groups records by seats won, ascending, and computes the bands at `v`.
pub fn summarize_ranges(records: &[PlanRecord], v: &Rational) -> (Vec<SeatBucket>, Vec<AcceptabilityBand>) {
    let mut groups: BTreeMap<usize, Vec<&PlanRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.seats).or_default().push(r);
    }
    let buckets = groups
        .into_iter()
        .map(|(seats, rs)| SeatBucket {
            seats,
            plans: rs.len(),
            mm: MetricStats::of(rs.iter().map(|r| &r.mm)).expect("nonempty"),
            pb: MetricStats::of(rs.iter().map(|r| &r.pb)).expect("nonempty"),
            eg: MetricStats::of(rs.iter().map(|r| &r.eg)).expect("nonempty"),
            dec: MetricStats::of(rs.iter().filter_map(|r| r.dec.as_ref())),
        })
        .collect();
    (buckets, acceptability_bands(v))
}

/// One row per visited plan; MM, PB and EG exact, declination to 12 places.
pub fn write_records_csv<W: Write>(records: &[PlanRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "burst", "seats", "mm", "pb", "eg", "dec"])?;
    for r in records {
        w.write_record([
            r.step.to_string(),
            r.burst.to_string(),
            r.seats.to_string(),
            Exact(&r.mm).to_string(),
            Exact(&r.pb).to_string(),
            Exact(&r.eg).to_string(),
            r.dec.as_ref().map(|d| format_decimal(d, 12)).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Long format: one row per (seat count, metric).
pub fn write_buckets_csv<W: Write>(buckets: &[SeatBucket], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["seats", "plans", "metric", "min", "max", "mean"])?;
    for b in buckets {
        for m in BandMetric::ALL {
            let Some(s) = m.stats(b) else { continue };
            let show = |q: &Rational| if m == BandMetric::Dec { format_decimal(q, 12) } else { Exact(q).to_string() };
            w.write_record([b.seats.to_string(), b.plans.to_string(), m.label().to_string(), show(&s.min), show(&s.max), show(&s.mean)])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(seats: usize, mm: i64, dec: Option<i64>) -> PlanRecord {
        PlanRecord { step: 0, burst: 0, seats, mm: ratio(mm, 100), pb: ratio(mm, 50), eg: ratio(-mm, 100), dec: dec.map(|d| ratio(d, 10)) }
    }

    #[test]
    fn single_plan_buckets_degenerate() {
        let (b, bands) = summarize_ranges(&[rec(2, 3, None)], &half());
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].mm, MetricStats { min: ratio(3, 100), max: ratio(3, 100), mean: ratio(3, 100) });
        assert!(b[0].dec.is_none());
        assert_eq!(bands[1].lo, ratio(-8, 100));
        assert_eq!(bands[0].lo, -bands[0].hi.clone());
        assert_eq!(bands[0].hi, &band_fraction() * &bands[0].sup);
    }

    #[test]
    fn means_recompute_from_records() {
        let rs = [rec(1, 1, Some(2)), rec(3, 5, Some(1)), rec(1, 4, None), rec(1, -2, Some(-3))];
        let (b, _) = summarize_ranges(&rs, &ratio(2, 5));
        assert_eq!(b.iter().map(|x| x.seats).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(b[0].plans, 3);
        assert_eq!(b[0].mm.mean, ratio(1, 100));
        assert_eq!(b[0].dec.as_ref().unwrap().mean, ratio(-1, 20));
        assert!(b[0].mm.overlaps(&b[0].mm));
        assert!(!b[0].mm.overlaps(&b[1].mm));
    }
}
