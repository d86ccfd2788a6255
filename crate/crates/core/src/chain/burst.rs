// Short-burst optimization and the per-plan metric record.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::summary::{summarize_ranges, AcceptabilityBand, SeatBucket};
use super::{recom_step, seed_partition, ChainError, Geography, Partition, Party};
use crate::metrics::{declination, efficiency_gap, mean_median, partisan_bias};
use crate::rational::{ratio, serde_rational, serde_rational_opt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurstConfig {
    pub districts: usize,
    /// Party whose seats are maximized and from whose side metrics are read.
    pub party: Party,
    pub burst_len: usize,
    pub bursts: usize,
    #[serde(with = "serde_rational")]
    pub deviation: Rational,
    pub seed: u64,
}

impl Default for BurstConfig {
    fn default() -> Self {
        Self { districts: 5, party: Party::A, burst_len: 10, bursts: 500, deviation: ratio(1, 20), seed: 0 }
    }
}

/// Metrics of one visited plan, from the optimizing party's side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanRecord {
    /// 0 for the seed plan, then 1, 2, ... across all bursts.
    pub step: usize,
    /// 0 for the seed plan, otherwise the 1-based burst.
    pub burst: usize,
    pub seats: usize,
    #[serde(with = "serde_rational")]
    pub mm: Rational,
    #[serde(with = "serde_rational")]
    pub pb: Rational,
    #[serde(with = "serde_rational")]
    pub eg: Rational,
    #[serde(with = "serde_rational_opt")]
    pub dec: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BurstRunSummary {
    pub config: BurstConfig,
    /// Statewide vote share of the optimizing party.
    #[serde(with = "serde_rational")]
    pub vote_share: Rational,
    pub records: Vec<PlanRecord>,
    /// Best seat count after each burst.
    pub best_per_burst: Vec<usize>,
    pub best_assignment: Vec<usize>,
    pub buckets: Vec<SeatBucket>,
    pub bands: Vec<AcceptabilityBand>,
}

impl BurstRunSummary {
    pub fn seed_seats(&self) -> usize {
        self.records[0].seats
    }

    pub fn best_seats(&self) -> usize {
        self.best_per_burst.last().copied().unwrap_or_else(|| self.seed_seats())
    }
}

pub fn plan_record(p: &Partition, party: Party, step: usize, burst: usize) -> PlanRecord {
    let e = p.election(party);
    PlanRecord {
        step,
        burst,
        seats: p.seats_won(party),
        mm: mean_median(&e),
        pb: partisan_bias(&e),
        eg: efficiency_gap(&e).expect("district elections have equal turnout"),
        dec: declination(&e).value().cloned(),
    }
}

/// Runs `bursts` bursts of `burst_len` recombination steps. Each burst
/// restarts from the best plan so far; a plan replaces the best when it wins
/// at least as many seats, so among ties the latest wins. Every visited plan
/// is checked and recorded.
pub fn short_burst(g: &Geography, cfg: &BurstConfig) -> Result<BurstRunSummary, ChainError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seed = seed_partition(g, cfg.districts, &cfg.deviation, &mut rng)?;
    let mut records = vec![plan_record(&seed, cfg.party, 0, 0)];
    let mut best = seed;
    let mut best_seats = records[0].seats;
    let mut best_per_burst = Vec::with_capacity(cfg.bursts);
    let mut step = 0;
    for burst in 1..=cfg.bursts {
        let mut current = best.clone();
        for _ in 0..cfg.burst_len {
            current = recom_step(&current, g, &cfg.deviation, &mut rng);
            current.check(g, &cfg.deviation)?;
            step += 1;
            let rec = plan_record(&current, cfg.party, step, burst);
            if rec.seats >= best_seats {
                best_seats = rec.seats;
                best = current.clone();
            }
            records.push(rec);
        }
        best_per_burst.push(best_seats);
    }
    let vote_share = match cfg.party {
        Party::A => g.vote_share(),
        Party::B => Rational::from_integer(1.into()) - g.vote_share(),
    };
    let (buckets, bands) = summarize_ranges(&records, &vote_share);
    Ok(BurstRunSummary {
        config: cfg.clone(),
        vote_share,
        records,
        best_per_burst,
        best_assignment: best.assignment().to_vec(),
        buckets,
        bands,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{synth_geography, GeographyKind};
    use crate::rational::half;

    fn small(party: Party, bursts: usize) -> BurstConfig {
        BurstConfig { districts: 4, party, burst_len: 5, bursts, deviation: ratio(1, 10), seed: 3 }
    }

    #[test]
    fn zero_bursts_record_only_the_seed() {
        let g = synth_geography(GeographyKind::Uniform, 6, 6, &half(), 1).unwrap();
        let s = short_burst(&g, &small(Party::A, 0)).unwrap();
        assert_eq!(s.records.len(), 1);
        assert!(s.best_per_burst.is_empty());
        assert_eq!(s.best_seats(), s.seed_seats());
    }

    #[test]
    fn best_never_decreases_and_runs_repeat() {
        let g = synth_geography(GeographyKind::Gradient, 6, 6, &ratio(2, 5), 4).unwrap();
        let s = short_burst(&g, &small(Party::A, 20)).unwrap();
        assert_eq!(s.records.len(), 1 + 20 * 5);
        assert!(s.best_per_burst.windows(2).all(|w| w[0] <= w[1]));
        assert!(s.best_per_burst[0] >= s.seed_seats());
        assert_eq!(short_burst(&g, &small(Party::A, 20)).unwrap(), s);
    }

    #[test]
    fn mirrored_map_reproduces_party_b() {
        let g = synth_geography(GeographyKind::Clustered, 6, 6, &ratio(3, 5), 8).unwrap();
        let a = short_burst(&g, &small(Party::A, 10)).unwrap();
        let b = short_burst(&g.swapped(), &small(Party::B, 10)).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.best_assignment, b.best_assignment);
    }
}
