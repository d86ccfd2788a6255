//! Build witness elections for range endpoints, interior targets and zero
//! metrics, and recheck each one with the metric functions.

use partisan_symmetry::bounds::{mm_range_fixed, pb_range_fixed};
use partisan_symmetry::constructors::{
    construct_mm_value, construct_pb_value, construct_zero_turnout, plan_mm_extremal, plan_pb_extremal, plan_zero,
    Extremum,
};
use partisan_symmetry::election::{Election, SvPair};
use partisan_symmetry::metrics::{mean_median, partisan_bias};
use partisan_symmetry::rational::{ratio, Exact};

fn show(label: &str, e: &Election) {
    println!(
        "  {label}: V={} S={} MM={} PB={}",
        Exact(&e.vote_share()),
        Exact(&e.seat_share().s()),
        Exact(&mean_median(e)),
        Exact(&partisan_bias(e))
    );
}

fn main() -> anyhow::Result<()> {
    let pair = SvPair::new(ratio(3, 5), &ratio(9, 10), 10)?;
    println!("pair {pair}: PB {} MM {}", pb_range_fixed(&pair)?, mm_range_fixed(&pair)?);
    for which in [Extremum::Min, Extremum::Max] {
        let plan = plan_pb_extremal(&pair, which)?;
        println!("PB {which:?} plan {plan}");
        show("compiled", &plan.compile()?);
        let plan = plan_mm_extremal(&pair, which)?;
        println!("MM {which:?} plan {plan}");
        show("compiled", &plan.compile()?);
    }
    println!("interior targets");
    show("MM = 1/20", &construct_mm_value(&pair, &ratio(1, 20))?);
    show("PB = 1/5", &construct_pb_value(&pair, &ratio(1, 5))?);
    let zero = SvPair::new(ratio(4, 5), &ratio(7, 10), 10)?;
    let plan = plan_zero(&zero)?;
    println!("zero plan {plan}");
    show("compiled", &plan.compile()?);
    let e = construct_zero_turnout(&ratio(2, 5), &ratio(3, 5), &ratio(4, 1))?;
    println!("zero with turnout ratio up to 4");
    show("weighted", &e);
    Ok(())
}
