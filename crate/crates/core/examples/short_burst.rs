//! Short-burst search for extra seats on a synthetic grid, with per-seat
//! metric ranges and the range plot.
//!
//! cargo run --release --example short_burst -- [uniform|clustered|gradient] [seed] [out.svg]

use partisan_symmetry::chain::{short_burst, synth_geography, BandMetric, BurstConfig, GeographyKind};
use partisan_symmetry::rational::{format_decimal, half};
use partisan_symmetry::render::range_plot_svg;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: GeographyKind = args.first().map_or("clustered", String::as_str).parse().map_err(anyhow::Error::msg)?;
    let seed: u64 = args.get(1).map_or(Ok(0), |a| a.parse())?;
    let g = synth_geography(kind, 10, 10, &half(), seed)?;
    let run = short_burst(&g, &BurstConfig { seed, ..BurstConfig::default() })?;
    println!("{} plans, seed plan {} seats, best {} seats", run.records.len(), run.seed_seats(), run.best_seats());
    for b in &run.buckets {
        let ranges: Vec<String> = BandMetric::ALL
            .iter()
            .filter_map(|m| m.stats(b).map(|s| format!("{} [{}, {}]", m.label(), format_decimal(&s.min, 3), format_decimal(&s.max, 3))))
            .collect();
        println!("  {} seats ({} plans): {}", b.seats, b.plans, ranges.join(", "));
    }
    for band in &run.bands {
        println!("  acceptable {}: [{}, {}]", band.metric.label(), format_decimal(&band.lo, 3), format_decimal(&band.hi, 3));
    }
    let out = args.get(2).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("ranges.svg"));
    std::fs::write(&out, range_plot_svg(&run))?;
    println!("wrote {}", out.display());
    Ok(())
}
