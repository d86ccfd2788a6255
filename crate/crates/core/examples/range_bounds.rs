//! Achievable MM and PB ranges at a (V, S) pair, in the limit and at a
//! fixed district count.
//!
//! cargo run --example range_bounds -- [V] [S] [n]

use partisan_symmetry::bounds::{mm_range_fixed, mm_range_limit, pb_range_fixed, pb_range_limit, zero_region_contains};
use partisan_symmetry::election::SvPair;
use partisan_symmetry::rational::parse_rational;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let v = parse_rational(args.first().map_or("0.6", String::as_str))?;
    let s = parse_rational(args.get(1).map_or("0.9", String::as_str))?;
    let n: usize = args.get(2).map_or(Ok(10), |a| a.parse())?;
    println!("limit PB {}", pb_range_limit(&v, &s)?);
    println!("limit MM {}", mm_range_limit(&v, &s)?);
    let pair = SvPair::new(v.clone(), &s, n)?;
    println!("n={n} PB {}", pb_range_fixed(&pair)?);
    match mm_range_fixed(&pair) {
        Ok(i) => println!("n={n} MM {i}"),
        Err(e) => println!("n={n} MM n/a ({e})"),
    }
    println!("MM = PB = 0 achievable in the limit: {}", zero_region_contains(&v, &s));
    Ok(())
}
