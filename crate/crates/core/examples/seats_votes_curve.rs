//! Seats-votes curve under uniform swing: corner points as CSV on stdout,
//! the MM/PB readings from the curve, and an SVG step plot.
//!
//! cargo run --example seats_votes_curve -- [out.svg]

use partisan_symmetry::election::Election;
use partisan_symmetry::io::write_curve_csv;
use partisan_symmetry::metrics::{mean_median, mm_from_curve, partisan_bias, pb_from_curve, seats_votes_curve};
use partisan_symmetry::render::curve_svg;
use partisan_symmetry::rational::Exact;

fn main() -> anyhow::Result<()> {
    let e = Election::from_fractions(&[20, 30, 55, 60, 65], 100)?;
    let curve = seats_votes_curve(&e)?;
    write_curve_csv(&curve, std::io::stdout().lock())?;
    println!("MM from curve {} (direct {})", Exact(&mm_from_curve(&curve)), Exact(&mean_median(&e)));
    println!("PB from curve {} (direct {})", Exact(&pb_from_curve(&curve)), Exact(&partisan_bias(&e)));
    let out = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("curve.svg"));
    std::fs::write(&out, curve_svg(&curve))?;
    println!("wrote {}", out.display());
    Ok(())
}
