//! Where MM = PB = 0 is achievable: the equal-turnout region, the bands
//! unlocked by unequal turnout, and an approximate declination-zero scan.

use partisan_symmetry::bounds::{closed_form_zero_region, zero_region_contains, zero_region_turnout};
use partisan_symmetry::oracle::DeclinationZeroScan;
use partisan_symmetry::rational::{int, ratio, Exact};

fn main() -> anyhow::Result<()> {
    for (v, s) in [(ratio(3, 5), ratio(7, 10)), (ratio(4, 5), ratio(3, 5)), (ratio(1, 3), ratio(1, 2)), (ratio(2, 5), ratio(3, 5))] {
        println!(
            "V={} S={}: exact region {}, closed form {}",
            Exact(&v),
            Exact(&s),
            zero_region_contains(&v, &s),
            closed_form_zero_region(&v, &s)
        );
    }
    for c in [int(1), int(4), int(100)] {
        for s in [ratio(1, 2), ratio(7, 10), ratio(9, 10)] {
            let band = zero_region_turnout(&s, &c)?;
            println!("C={} S={}: V in [{}, {})", Exact(&c), Exact(&s), Exact(&band.v_lo), Exact(&band.v_hi));
        }
    }
    let scan = DeclinationZeroScan::standard();
    let found = scan.run();
    for (won, totals) in &found.totals {
        let (Some(lo), Some(hi)) = (totals.first(), totals.last()) else { continue };
        let scale = (scan.n as i64) * scan.d as i64;
        println!("declination near 0 with {won}/{} seats: V from {} to {}", scan.n, Exact(&ratio(*lo, scale)), Exact(&ratio(*hi, scale)));
    }
    Ok(())
}
