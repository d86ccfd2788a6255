// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use partisan_symmetry::bounds::{
    closed_form_zero_region, mm_range_fixed, mm_range_limit, pb_range_fixed, pb_range_limit, region_raster,
    zero_region_contains, zero_region_turnout, CellValue, MetricInterval, RasterKind, RasterMetric, RasterSpec,
    SharpRanges,
};
use partisan_symmetry::chain::{short_burst, synth_geography, BurstConfig, GeographyKind, Partition};
use partisan_symmetry::constructors::{
    construct_mm_extremal, construct_pb_extremal, construct_zero, construct_zero_turnout, Extremum,
};
use partisan_symmetry::election::{DistrictResult, Election, SvPair, Turnout};
use partisan_symmetry::metrics::{mean_median, mm_from_curve, partisan_bias, pb_from_curve, seats_votes_curve};
use partisan_symmetry::oracle::{
    compare_zero_scan, enumerate_extremes, resolve_ambiguities, run_verification, zero_achievability_scan, LatticeSpec,
    VerifyConfig, DEFAULT_BUDGET,
};
use partisan_symmetry::rational::{half, int, ratio, to_f64, Exact, Rational};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_election(rng: &mut ChaCha8Rng) -> Election {
    let n = rng.random_range(2..=15);
    let districts = (0..n)
        .map(|_| {
            let k: i64 = rng.random_range(0..=1000);
            DistrictResult::new(ratio(k, 1000), (k == 500).then(|| rng.random_bool(0.5))).expect("share in range")
        })
        .collect();
    Election::new(districts, None).expect("nonempty")
}

fn worked_examples() -> Outcome {
    let names = common::fixture_names();
    let problems: Vec<String> = names.iter().flat_map(|n| common::check_fixture(n)).collect();
    ensure(problems.is_empty(), || problems.join("; "))?;
    let e = common::load_fixture("swing_example");
    ensure(mean_median(&e) == ratio(9, 100) && partisan_bias(&e) == ratio(1, 10), || "swing example".into())?;
    Ok(format!("{} fixtures exact", names.len()))
}

fn near_half_difference() -> Outcome {
    let e = common::load_fixture("mm_minus_pb_near_half");
    let d = mean_median(&e) - partisan_bias(&e);
    ensure(e.len() == 20, || format!("{} districts", e.len()))?;
    ensure(d == ratio(43, 100) && d < half(), || format!("MM - PB = {}", Exact(&d)))?;
    Ok(format!("MM - PB = {}", Exact(&d)))
}

fn sign_relationship() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_301);
    let (mut zeros, mut opposite, mut zero_mm_nonzero_pb) = (0, 0, 0);
    for _ in 0..10_000 {
        let e = random_election(&mut rng);
        let (mm, pb) = (mean_median(&e), partisan_bias(&e));
        if (mm.is_positive() && pb.is_negative()) || (mm.is_negative() && pb.is_positive()) {
            opposite += 1;
        }
        if mm.is_zero() {
            zeros += 1;
            if !pb.is_zero() {
                zero_mm_nonzero_pb += 1;
            }
        }
    }
    ensure(opposite == 0 && zero_mm_nonzero_pb == 0, || {
        format!("{opposite} opposite-sign elections, {zero_mm_nonzero_pb} with MM = 0 and PB != 0")
    })?;
    let w = Election::from_fractions(&[55, 60, 70, 90], 100).expect("valid shares");
    let (mm, pb) = (mean_median(&w), partisan_bias(&w));
    ensure(pb.is_zero() && mm == ratio(-3, 80), || format!("witness MM {} PB {}", Exact(&mm), Exact(&pb)))?;
    Ok(format!("10000 elections, {zeros} with MM = 0; witness PB 0, MM -3/80"))
}

fn curve_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..1000 {
        let e = random_election(&mut rng);
        let c = seats_votes_curve(&e).map_err(|err| err.to_string())?;
        ensure(mm_from_curve(&c) == mean_median(&e) && pb_from_curve(&c) == partisan_bias(&e), || {
            format!("election {i} ({e}) disagrees")
        })?;
    }
    Ok("1000 elections agree exactly".into())
}

fn oracle_containment() -> Outcome {
    let report = run_verification(&VerifyConfig::default(), &SharpRanges).map_err(|e| e.to_string())?;
    let mut text = Vec::new();
    report.write_text(&mut text).map_err(|e| e.to_string())?;
    ensure(report.passed(), || String::from_utf8_lossy(&text).into_owned())?;
    let (failures, gaps): (usize, usize) =
        report.lattices.iter().fold((0, 0), |acc, r| (acc.0 + r.containment_failures, acc.1 + r.unexplained_gaps));
    let mut endpoints = 0;
    for n in 3..=10usize {
        for won in 0..=n {
            for j in 0..=20 {
                let Ok(p) = SvPair::new(ratio(j, 20), &ratio(won as i64, n as i64), n) else { continue };
                if !p.is_feasible(Turnout::Equal) {
                    continue;
                }
                let ranges = [
                    ("PB", pb_range_fixed(&p).map_err(|e| e.to_string())?),
                    ("MM", mm_range_fixed(&p).map_err(|e| e.to_string())?),
                ];
                for (metric, range) in &ranges {
                    for (which, end, closed) in
                        [(Extremum::Min, range.lo(), range.lo_closed()), (Extremum::Max, range.hi(), range.hi_closed())]
                    {
                        if !closed {
                            continue;
                        }
                        let e = if *metric == "PB" { construct_pb_extremal(&p, which) } else { construct_mm_extremal(&p, which) }
                            .map_err(|err| format!("{metric} {which:?} at {p}: {err}"))?;
                        let got = if *metric == "PB" { partisan_bias(&e) } else { mean_median(&e) };
                        ensure(got == *end && e.vote_share() == *p.v() && e.seats_won() == p.won() && e.len() == n, || {
                            format!("{metric} {which:?} at {p}: witness gives {}, endpoint {}", Exact(&got), Exact(end))
                        })?;
                        endpoints += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} lattices, {failures} containment failures, {gaps} unexplained gaps; {endpoints} closed endpoints hit exactly",
        report.lattices.len()
    ))
}

fn endpoint_gaps(fixed: &MetricInterval, limit: &MetricInterval) -> (Rational, Rational) {
    ((fixed.lo() - limit.lo()).abs(), (fixed.hi() - limit.hi()).abs())
}

fn limit_convergence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = Vec::new();
    while pairs.len() < 50 {
        let v = ratio(rng.random_range(1..1000), 1000);
        let s = ratio(rng.random_range(0..=10), 10);
        if pb_range_limit(&v, &s).is_ok() && mm_range_limit(&v, &s).is_ok() {
            pairs.push((v, s));
        }
    }
    let mut misses = Vec::new();
    let mut checks = 0;
    for (v, s) in &pairs {
        let limits = [("PB", pb_range_limit(v, s).expect("sampled")), ("MM", mm_range_limit(v, s).expect("sampled"))];
        for n in [10usize, 100, 1000] {
            let p = SvPair::new(v.clone(), s, n).expect("S on the 1/10 grid");
            let fixed = [pb_range_fixed(&p).map_err(|e| e.to_string())?, mm_range_fixed(&p).map_err(|e| e.to_string())?];
            for ((metric, limit), fixed) in limits.iter().zip(&fixed) {
                let (lo, hi) = endpoint_gaps(fixed, limit);
                let tol = ratio(2, n as i64);
                checks += 1;
                if lo > tol || hi > tol {
                    misses.push(format!(
                        "{metric} V={} S={} n={n}: fixed {fixed} limit {limit} (gaps {:.4}, {:.4})",
                        Exact(v),
                        Exact(s),
                        to_f64(&lo),
                        to_f64(&hi)
                    ));
                }
            }
        }
    }
    ensure(misses.is_empty(), || format!("{} of {checks} checks outside 2/n: {}", misses.len(), misses.join("; ")))?;
    Ok(format!("50 pairs, {checks} endpoint checks within 2/n"))
}

fn flags(r: &partisan_symmetry::bounds::Raster) -> Vec<bool> {
    r.cells.iter().map(|c| c.value == CellValue::Flag(true)).collect()
}

fn zero_regions() -> Outcome {
    let grid = 201;
    let mask = |metric, c: Option<Rational>| {
        region_raster(&RasterSpec { grid, turnout_ratio: c, ..RasterSpec::new(metric, RasterKind::Zero) })
            .map_err(|e| e.to_string())
    };
    let (mm, pb) = (mask(RasterMetric::Mm, None)?, mask(RasterMetric::Pb, None)?);
    ensure(mm.cells == pb.cells, || "MM and PB zero masks differ".into())?;

    let mut outside = 0;
    let mut points = 0;
    for (n, d) in [(4usize, 20u32), (6, 10), (7, 8)] {
        let scan = zero_achievability_scan(LatticeSpec::new(n, d), None, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let report = compare_zero_scan(&scan);
        points += report.points;
        outside += report.outside_region.len();
        let step = ratio(1, d as i64);
        for (v, won) in &scan.points {
            let s = ratio(*won as i64, n as i64);
            // The boundary rises with V, so one step of slack means testing at V - step.
            let shifted = v - &step;
            if shifted > ratio(3, 4) && s > half() && *v < int(1) {
                let threshold = (&shifted * int(3) - int(2)) / (&shifted * int(2) - int(1));
                ensure(s > threshold, || format!("zero at V={} S={} below the boundary", Exact(v), Exact(&s)))?;
            }
        }
        ensure(report.passed(), || format!("n={n} D={d}: {:?}", report.outside_region))?;
    }

    let mut compared = 0;
    for k in 100..=200 {
        let s = ratio(k, 200);
        let band = zero_region_turnout(&s, &int(1)).map_err(|e| e.to_string())?;
        for j in 0..=200 {
            let v = ratio(j, 200);
            ensure(band.contains(&v) == closed_form_zero_region(&v, &s), || {
                format!("C=1 band and the closed-form region differ at V={} S={}", Exact(&v), Exact(&s))
            })?;
            compared += 1;
        }
    }

    let sizes: Vec<usize> = [int(1), int(4), int(100)]
        .into_iter()
        .map(|c| mask(RasterMetric::Mm, Some(c)).map(|r| flags(&r)))
        .collect::<Result<Vec<_>, _>>()?
        .windows(2)
        .map(|w| {
            let subset = w[0].iter().zip(&w[1]).all(|(a, b)| !a || *b);
            let grows = w[0].iter().zip(&w[1]).any(|(a, b)| !a && *b);
            (subset && grows) as usize
        })
        .collect();
    ensure(sizes == [1, 1], || "turnout masks do not grow strictly from C=1 to C=4 to C=100".into())?;

    let mut witnesses = 0;
    for n in 1..=10usize {
        for won in 0..=n {
            for j in 0..=40 {
                let (v, s) = (ratio(j, 40), ratio(won as i64, n as i64));
                let Ok(p) = SvPair::new(v.clone(), &s, n) else { continue };
                if !p.is_feasible(Turnout::Equal) || !zero_region_contains(&v, &s) {
                    continue;
                }
                let e = construct_zero(&p).map_err(|err| format!("construct_zero at {p}: {err}"))?;
                ensure(
                    mean_median(&e).is_zero() && partisan_bias(&e).is_zero() && e.vote_share() == v && e.seat_share().s() == s,
                    || format!("zero witness at {p} fails: {e}"),
                )?;
                witnesses += 1;
            }
        }
    }
    for c in [int(4), int(100)] {
        for k in 5..=9 {
            let s = ratio(k, 10);
            let band = zero_region_turnout(&s, &c).map_err(|e| e.to_string())?;
            for t in 0..20 {
                let v = &band.v_lo + (&band.v_hi - &band.v_lo) * ratio(t, 20);
                let e = construct_zero_turnout(&v, &s, &c)
                    .map_err(|err| format!("turnout witness V={} S={} C={}: {err}", Exact(&v), Exact(&s), Exact(&c)))?;
                let ratio_ok = e.weights().is_none_or(|w| w.iter().max().unwrap() / w.iter().min().unwrap() <= c);
                ensure(
                    mean_median(&e).is_zero() && partisan_bias(&e).is_zero() && e.vote_share() == v && e.seat_share().s() == s && ratio_ok,
                    || format!("turnout witness V={} S={} C={} fails", Exact(&v), Exact(&s), Exact(&c)),
                )?;
                witnesses += 1;
            }
        }
    }
    Ok(format!(
        "masks identical on {} cells; {points} scan zeros, {outside} off-region; C=1 matches on {compared} cells; C=1 < C=4 < C=100; {witnesses} witnesses exact",
        mm.cells.len()
    ))
}

fn discontinuities() -> Outcome {
    let eps = ratio(1, 1_000_000);
    let s = ratio(9, 10);
    let below = pb_range_limit(&(half() - &eps), &s).map_err(|e| e.to_string())?;
    let above = pb_range_limit(&(half() + &eps), &s).map_err(|e| e.to_string())?;
    let (dlo, dhi) = endpoint_gaps(&below, &above);
    let pb_jump = if dlo > dhi { dlo } else { dhi };
    ensure(pb_jump > ratio(1, 10), || format!("PB {below} vs {above}"))?;

    let v = ratio(3, 5);
    let step = ratio(1, 1000);
    let lower = mm_range_limit(&v, &(half() - &step)).map_err(|e| e.to_string())?;
    let upper = mm_range_limit(&v, &(half() + &step)).map_err(|e| e.to_string())?;
    let (dlo, dhi) = endpoint_gaps(&lower, &upper);
    let mm_jump = if dlo > dhi { dlo } else { dhi };
    // A continuous endpoint moves by O(step) here; a jump is orders larger.
    ensure(mm_jump > ratio(1, 10), || format!("MM {lower} vs {upper}"))?;
    Ok(format!(
        "PB at S=9/10: {below} -> {above} (jump {}); MM at V=3/5: {lower} -> {upper} (jump {})",
        Exact(&pb_jump),
        Exact(&mm_jump)
    ))
}

fn empirical_decoupling() -> Outcome {
    let mut lines = Vec::new();
    for (kind, seed) in [(GeographyKind::Uniform, 0u64), (GeographyKind::Clustered, 0), (GeographyKind::Gradient, 2)] {
        let started = Instant::now();
        let g = synth_geography(kind, 10, 10, &half(), seed).map_err(|e| e.to_string())?;
        let cfg = BurstConfig { seed, ..BurstConfig::default() };
        ensure(cfg.districts == 5 && cfg.burst_len == 10 && cfg.bursts == 500, || "golden config changed".into())?;
        let run = short_burst(&g, &cfg).map_err(|e| format!("{kind}: {e}"))?;
        let elapsed = started.elapsed();
        ensure(elapsed < Duration::from_secs(300), || format!("{kind}: {elapsed:?}"))?;
        ensure(run.best_per_burst.windows(2).all(|w| w[0] <= w[1]), || format!("{kind}: best seats decreased"))?;
        let best = Partition::new(&g, run.best_assignment.clone(), cfg.districts).map_err(|e| e.to_string())?;
        best.check(&g, &cfg.deviation).map_err(|e| format!("{kind}: best plan {e}"))?;
        ensure(run.records.len() == 1 + 500 * 10, || format!("{kind}: {} records", run.records.len()))?;
        let (lo, hi) = (run.buckets.first().expect("seed bucket"), run.buckets.last().expect("seed bucket"));
        ensure(lo.seats < hi.seats, || format!("{kind}: a single seat count"))?;
        ensure(lo.mm.overlaps(&hi.mm) && lo.pb.overlaps(&hi.pb), || format!("{kind}: MM or PB ranges disjoint"))?;
        ensure(!lo.eg.overlaps(&hi.eg), || format!("{kind}: EG ranges overlap"))?;
        let again = short_burst(&g, &cfg).map_err(|e| e.to_string())?;
        ensure(again == run, || format!("{kind}: rerun differs"))?;
        lines.push(format!("{kind} seed {seed}: {}..{} seats, {:.1}s", lo.seats, hi.seats, elapsed.as_secs_f64()));
    }
    Ok(lines.join("; "))
}

fn ambiguity_resolution() -> Outcome {
    let tables = [(3usize, 20u32), (4, 20), (5, 12)]
        .into_iter()
        .map(|(n, d)| enumerate_extremes(LatticeSpec::new(n, d), DEFAULT_BUDGET))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let refs: Vec<_> = tables.iter().collect();
    let a = resolve_ambiguities(&refs);
    let supported = a.odd_upper_supported.clone().ok_or_else(|| format!("odd-n bound unresolved: {:?}", a.odd_upper))?;
    ensure(supported == "literal", || format!("enumeration supports {supported}"))?;
    ensure(a.odd_upper.iter().any(|r| r.violations > 0), || "the rejected variant shows no violations".into())?;
    ensure(!a.boundary.is_empty() && a.boundary.iter().all(|b| b.inclusive_matches || b.exclusive_matches), || {
        a.boundary_conclusion.clone()
    })?;
    Ok(format!("odd-n upper bound: stated form supported; S=1/2 boundary: {}", a.boundary_conclusion))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "worked-example fidelity", limit: Duration::from_secs(1), run: worked_examples },
        Criterion { id: 2, name: "near-half MM - PB instance", limit: Duration::from_secs(1), run: near_half_difference },
        Criterion { id: 3, name: "MM/PB sign relationship", limit: Duration::from_secs(10), run: sign_relationship },
        Criterion { id: 4, name: "seats-votes curve equivalence", limit: Duration::from_secs(10), run: curve_equivalence },
        Criterion { id: 5, name: "oracle containment and tightness", limit: Duration::from_secs(600), run: oracle_containment },
        Criterion { id: 6, name: "limit convergence within 2/n", limit: Duration::from_secs(30), run: limit_convergence },
        Criterion { id: 7, name: "zero regions", limit: Duration::from_secs(300), run: zero_regions },
        Criterion { id: 8, name: "discontinuity probes", limit: Duration::from_secs(1), run: discontinuities },
        Criterion { id: 9, name: "empirical decoupling on golden runs", limit: Duration::from_secs(900), run: empirical_decoupling },
        Criterion { id: 10, name: "boundary ambiguity resolution", limit: Duration::from_secs(60), run: ambiguity_resolution },
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let started = Instant::now();
        let outcome = (c.run)();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("took {:.2}s, limit {:.0}s ({detail})", elapsed.as_secs_f64(), c.limit.as_secs_f64())),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} [{:.2}s]: {detail}", c.id, c.name, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} [{:.2}s]: {why}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
