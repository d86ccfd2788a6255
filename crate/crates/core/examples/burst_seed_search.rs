//! Scans seeds for short-burst runs where the MM and PB ranges of the
//! fewest-seats and most-seats buckets overlap while the EG ranges do not.
//!
//! cargo run --release --example burst_seed_search -- [kind] [first seed] [count]

use std::time::Instant;

use partisan_symmetry::chain::{short_burst, synth_geography, BurstConfig, BurstRunSummary, GeographyKind};
use partisan_symmetry::rational::half;

fn decoupled(s: &BurstRunSummary) -> bool {
    let (lo, hi) = (s.buckets.first().unwrap(), s.buckets.last().unwrap());
    lo.seats != hi.seats && lo.mm.overlaps(&hi.mm) && lo.pb.overlaps(&hi.pb) && !lo.eg.overlaps(&hi.eg)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let kind: GeographyKind = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(GeographyKind::Clustered);
    let first: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0);
    let count: u64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(5);
    for seed in first..first + count {
        let g = synth_geography(kind, 10, 10, &half(), seed).unwrap();
        let cfg = BurstConfig { seed, ..BurstConfig::default() };
        let t = Instant::now();
        let s = short_burst(&g, &cfg).unwrap();
        let seats: Vec<String> = s.buckets.iter().map(|b| format!("{}:{}", b.seats, b.plans)).collect();
        println!(
            "{kind} seed {seed}: {} in {:.1}s, seed plan {} seats, best {}, buckets [{}]",
            if decoupled(&s) { "decoupled" } else { "rejected" },
            t.elapsed().as_secs_f64(),
            s.seed_seats(),
            s.best_seats(),
            seats.join(" ")
        );
    }
}
