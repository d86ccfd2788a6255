//! Load an election file and print every metric.
//!
//! cargo run --example metrics_report -- [election.json]

use partisan_symmetry::io::election_from_json;
use partisan_symmetry::metrics::{declination, efficiency_gap, mean_median, partisan_bias, sign_consistency};
use partisan_symmetry::rational::format_both;

fn main() -> anyhow::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "fixtures/swing_example.json".into());
    let path = if std::path::Path::new(&path).exists() { path } else { format!("../../{path}") };
    let e = election_from_json(&std::fs::read_to_string(&path)?)?;
    println!("{path}: {} districts", e.len());
    println!("V   {}", format_both(&e.vote_share()));
    println!("S   {}", format_both(&e.seat_share().s()));
    println!("MM  {}", format_both(&mean_median(&e)));
    println!("PB  {}", format_both(&partisan_bias(&e)));
    match efficiency_gap(&e) {
        Ok(eg) => println!("EG  {}", format_both(&eg)),
        Err(err) => println!("EG  n/a ({err})"),
    }
    match declination(&e).value() {
        Some(d) => println!("DEC {}", format_both(d)),
        None => println!("DEC undefined"),
    }
    println!("MM and PB signs consistent: {}", sign_consistency(&e));
    Ok(())
}
