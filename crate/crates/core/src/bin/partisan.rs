//! `partisan`: metrics, bounds, region rasters, oracle verification and
//! short-burst runs from the command line.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 budget refusal,
//! 3 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use partisan_symmetry::bounds::literal::{LiteralRanges, OddUpper};
use partisan_symmetry::bounds::{
    mm_range_fixed, mm_range_limit, pb_range_fixed, pb_range_limit, region_raster, zero_region_contains, MetricInterval,
    RangeFormulas, RasterKind, RasterMetric, RasterSpec, SharpRanges,
};
use partisan_symmetry::chain::{
    short_burst, synth_geography, write_buckets_csv, write_records_csv, BurstConfig, Geography, GeographyKind, Party,
};
use partisan_symmetry::constructors::{
    construct_mm_extremal, construct_pb_extremal, construct_zero, plan_mm_extremal, plan_pb_extremal, plan_zero, Extremum,
};
use partisan_symmetry::election::{Election, SvPair};
use partisan_symmetry::io::{election_from_json, election_to_json, write_curve_csv};
use partisan_symmetry::metrics::{declination, efficiency_gap, mean_median, partisan_bias, seats_votes_curve};
use partisan_symmetry::oracle::{run_verification, write_table_csv, OracleError, VerifyConfig, DEFAULT_BUDGET};
use partisan_symmetry::rational::{format_both, format_decimal, parse_rational, serde_rational, serde_rational_opt, Rational};
use partisan_symmetry::render::{curve_svg, range_plot_svg, raster_svg};

#[derive(Parser, Serialize)]
#[command(name = "partisan", version, about = "Exact partisan-symmetry metrics, range bounds and short-burst runs")]
struct Cli {
    /// Directory for output files and the run manifest.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// MM, PB, EG, declination, V and S of an election file.
    Metrics(MetricsArgs),
    /// Achievable PB and MM ranges at a (V, S) pair.
    Bounds(BoundsArgs),
    /// Raster of a range endpoint or zero region over the unit square.
    Region(RegionArgs),
    /// Enumerate lattices and check the range formulas against them.
    Verify(VerifyArgs),
    /// Short-burst seat maximization on a geography.
    Shortburst(BurstArgs),
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Args, Serialize)]
struct MetricsArgs {
    /// Election JSON file.
    file: PathBuf,
    /// Also write the seats-votes curve as curve.csv and curve.svg.
    #[arg(long)]
    curve: bool,
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    #[arg(value_parser = rational_arg)]
    #[serde(with = "serde_rational")]
    v: Rational,
    #[arg(value_parser = rational_arg)]
    #[serde(with = "serde_rational")]
    s: Rational,
    /// District count for the fixed-n ranges.
    #[arg(long)]
    n: Option<usize>,
    /// Build elections hitting each closed fixed-n endpoint (needs --n).
    #[arg(long)]
    witness: bool,
    /// Print the construction plans behind the witnesses.
    #[arg(long)]
    plan: bool,
}

#[derive(Args, Serialize)]
struct RegionArgs {
    /// mm, pb, eg, dec, or `zero` for the MM/PB zero region.
    metric: String,
    /// min, max or zero.
    kind: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Turnout ratio bound for the zero region.
    #[arg(long = "C", value_parser = rational_arg)]
    #[serde(with = "serde_rational_opt")]
    c: Option<Rational>,
    /// Points per axis.
    #[arg(long, default_value_t = 201)]
    grid: usize,
    /// Also write an SVG heatmap.
    #[arg(long)]
    svg: bool,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// District counts, e.g. 3,4,5.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<usize>,
    /// Lattice denominators, paired with --n-list (one value applies to all).
    #[arg(long, value_delimiter = ',')]
    d_list: Vec<u32>,
    /// sharp, literal, or literal-even (even-n form of the odd upper bound).
    #[arg(long, default_value = "sharp")]
    provider: String,
    /// Largest number of lattice elections to enumerate per (n, D).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args, Serialize)]
struct BurstArgs {
    /// Geography JSON file; overrides --kind.
    #[arg(long)]
    geography: Option<PathBuf>,
    /// Synthetic geography: uniform, clustered or gradient.
    #[arg(long, default_value = "clustered")]
    kind: String,
    #[arg(long, default_value_t = 10)]
    rows: usize,
    #[arg(long, default_value_t = 10)]
    cols: usize,
    /// Party A's expected share in the synthetic geography.
    #[arg(long, default_value = "1/2", value_parser = rational_arg)]
    #[serde(with = "serde_rational")]
    lean: Rational,
    /// Seed for the synthetic geography (default: --seed).
    #[arg(long)]
    geo_seed: Option<u64>,
    #[arg(long, default_value_t = 5)]
    districts: usize,
    #[arg(long, default_value = "A")]
    party: String,
    #[arg(long, default_value_t = 500)]
    bursts: usize,
    #[arg(long, default_value_t = 10)]
    burst_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest allowed |population − ideal| / ideal.
    #[arg(long, default_value = "1/20", value_parser = rational_arg)]
    #[serde(with = "serde_rational")]
    deviation: Rational,
}

enum Failure {
    Usage(anyhow::Error),
    Budget(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("refused: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().context("configuring worker threads")?;
    }
    fs::create_dir_all(&cli.out).with_context(|| format!("creating {}", cli.out.display()))?;
    let manifest = serde_json::json!({ "program": "partisan", "version": env!("CARGO_PKG_VERSION"), "config": cli });
    write(&cli.out, "manifest.json", &serde_json::to_string_pretty(&manifest).expect("config serializes"))?;
    match &cli.command {
        Command::Metrics(a) => cmd_metrics(a, &cli.out),
        Command::Bounds(a) => cmd_bounds(a, &cli.out),
        Command::Region(a) => cmd_region(a, &cli.out),
        Command::Verify(a) => cmd_verify(a, &cli.out),
        Command::Shortburst(a) => cmd_shortburst(a, &cli.out),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> anyhow::Result<()> {
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
}

fn cmd_metrics(a: &MetricsArgs, out: &Path) -> Outcome {
    let text = fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let e = election_from_json(&text).map_err(|err| anyhow!("{}: {err}", a.file.display()))?;
    let pair = e.seat_share();
    let mut report = serde_json::Map::new();
    let mut line = |name: &str, value: Option<&Rational>, note: Option<String>| {
        match (value, note) {
            (Some(v), _) => {
                println!("{name:<4} {}", format_both(v));
                report.insert(name.to_string(), serde_json::json!(partisan_symmetry::rational::format_exact(v)));
            }
            (None, Some(n)) => {
                println!("{name:<4} {n}");
                report.insert(name.to_string(), serde_json::Value::Null);
            }
            (None, None) => unreachable!(),
        }
    };
    line("V", Some(pair.v()), None);
    line("S", Some(&pair.s()), None);
    line("MM", Some(&mean_median(&e)), None);
    line("PB", Some(&partisan_bias(&e)), None);
    match efficiency_gap(&e) {
        Ok(eg) => line("EG", Some(&eg), None),
        Err(err) => line("EG", None, Some(format!("not reported: {err}"))),
    }
    match declination(&e).value() {
        Some(d) => {
            println!("DEC  {} (50-digit approximation)", format_decimal(d, 12));
            report.insert("DEC".into(), serde_json::json!(format_decimal(d, 50)));
        }
        None => {
            println!("DEC  undefined (one party wins every district)");
            report.insert("DEC".into(), serde_json::Value::Null);
        }
    }
    write(out, "metrics.json", &serde_json::to_string_pretty(&report).expect("json"))?;
    if a.curve {
        let curve = seats_votes_curve(&e).map_err(|err| anyhow!("{err}"))?;
        let mut csv = Vec::new();
        write_curve_csv(&curve, &mut csv).map_err(|err| anyhow!("{err}"))?;
        fs::write(out.join("curve.csv"), csv).context("writing curve.csv")?;
        write(out, "curve.svg", &curve_svg(&curve))?;
        println!("curve written to {}", out.join("curve.csv").display());
    }
    Ok(())
}

fn show(name: &str, i: &MetricInterval) {
    println!("{name:<12} {i}");
}

fn cmd_bounds(a: &BoundsArgs, out: &Path) -> Outcome {
    let pb = pb_range_limit(&a.v, &a.s).map_err(|e| anyhow!("{e}"))?;
    let mm = mm_range_limit(&a.v, &a.s).map_err(|e| anyhow!("{e}"))?;
    println!("V = {}, S = {}", format_both(&a.v), format_both(&a.s));
    show("PB (limit)", &pb);
    show("MM (limit)", &mm);
    println!("zero region: {}", if zero_region_contains(&a.v, &a.s) { "inside" } else { "outside" });
    let Some(n) = a.n else {
        if a.witness || a.plan {
            return Err(Failure::Usage(anyhow!("--witness and --plan need --n")));
        }
        return Ok(());
    };
    let pair = SvPair::new(a.v.clone(), &a.s, n).map_err(|e| anyhow!("{e}"))?;
    let pb_fixed = pb_range_fixed(&pair).map_err(|e| anyhow!("{e}"))?;
    show(&format!("PB (n = {n})"), &pb_fixed);
    let mm_fixed = if n >= 3 {
        let i = mm_range_fixed(&pair).map_err(|e| anyhow!("{e}"))?;
        show(&format!("MM (n = {n})"), &i);
        Some(i)
    } else {
        println!("MM (n = {n})  needs at least 3 districts");
        None
    };
    if !(a.witness || a.plan) {
        return Ok(());
    }
    let mut targets: Vec<(&str, Extremum)> = vec![("pb", Extremum::Min), ("pb", Extremum::Max)];
    if mm_fixed.is_some() {
        targets.extend([("mm", Extremum::Min), ("mm", Extremum::Max)]);
    }
    for (metric, which) in targets {
        let (plan, interval) = match metric {
            "pb" => (plan_pb_extremal(&pair, which), &pb_fixed),
            _ => (plan_mm_extremal(&pair, which), mm_fixed.as_ref().expect("checked")),
        };
        let closed = match which {
            Extremum::Min => interval.lo_closed(),
            Extremum::Max => interval.hi_closed(),
        };
        if !closed {
            continue;
        }
        let plan = plan.map_err(|e| anyhow!("{metric} {which:?}: {e}"))?;
        let e = match metric {
            "pb" => construct_pb_extremal(&pair, which),
            _ => construct_mm_extremal(&pair, which),
        }
        .map_err(|e| anyhow!("{e}"))?;
        report_witness(&format!("{metric}_{}", label(which)), &e, out, a.witness)?;
        if a.plan {
            println!("{}", serde_json::to_string_pretty(&plan).expect("json"));
        }
    }
    if zero_region_contains(&a.v, &a.s) {
        match (plan_zero(&pair), construct_zero(&pair)) {
            (Ok(plan), Ok(e)) => {
                report_witness("zero", &e, out, a.witness)?;
                if a.plan {
                    println!("{}", serde_json::to_string_pretty(&plan).expect("json"));
                }
            }
            (Err(err), _) | (_, Err(err)) => println!("zero witness: {err}"),
        }
    }
    Ok(())
}

fn label(which: Extremum) -> &'static str {
    match which {
        Extremum::Min => "min",
        Extremum::Max => "max",
    }
}

fn report_witness(name: &str, e: &Election, out: &Path, save: bool) -> anyhow::Result<()> {
    let shares: Vec<String> = e.shares().map(partisan_symmetry::rational::format_exact).collect();
    println!(
        "witness {name}: n = {}, MM {}, PB {}, shares [{}]",
        e.len(),
        format_both(&mean_median(e)),
        format_both(&partisan_bias(e)),
        shares.join(", ")
    );
    if save {
        write(out, &format!("witness_{name}.json"), &election_to_json(e))?;
    }
    Ok(())
}

fn cmd_region(a: &RegionArgs, out: &Path) -> Outcome {
    let (metric, kind, stem) = if a.metric.eq_ignore_ascii_case("zero") {
        if a.kind.is_some() {
            return Err(Failure::Usage(anyhow!("`region zero` takes no second argument")));
        }
        (RasterMetric::Mm, RasterKind::Zero, "region_zero".to_string())
    } else {
        let metric: RasterMetric = a.metric.parse().map_err(|e: String| anyhow!(e))?;
        let kind: RasterKind = a
            .kind
            .as_deref()
            .ok_or_else(|| anyhow!("give min, max or zero after the metric"))?
            .parse()
            .map_err(|e: String| anyhow!(e))?;
        (metric, kind, format!("region_{metric}_{kind}"))
    };
    let spec = RasterSpec { metric, kind, grid: a.grid, n: a.n, turnout_ratio: a.c.clone() };
    let raster = region_raster(&spec).map_err(|e| anyhow!("{e}"))?;
    if kind == RasterKind::Zero && matches!(metric, RasterMetric::Mm | RasterMetric::Pb) {
        let other = if metric == RasterMetric::Mm { RasterMetric::Pb } else { RasterMetric::Mm };
        let twin = region_raster(&RasterSpec { metric: other, ..spec.clone() }).map_err(|e| anyhow!("{e}"))?;
        let differing: Vec<String> = raster
            .cells
            .iter()
            .zip(&twin.cells)
            .filter(|(x, y)| x.value != y.value)
            .take(10)
            .map(|(x, _)| format!("({}, {})", x.v, x.s))
            .collect();
        if !differing.is_empty() {
            return Err(Failure::Verification(format!("MM and PB zero masks differ at {}", differing.join(", "))));
        }
        println!("MM and PB zero masks are identical");
    }
    let mut csv = Vec::new();
    raster.write_csv(&mut csv).context("rendering CSV")?;
    fs::write(out.join(format!("{stem}.csv")), csv).context("writing raster CSV")?;
    println!("wrote {}", out.join(format!("{stem}.csv")).display());
    if raster.approximate {
        println!("note: declination zero cells come from a discretised f64 search");
    }
    if a.svg {
        write(out, &format!("{stem}.svg"), &raster_svg(&raster))?;
        println!("wrote {}", out.join(format!("{stem}.svg")).display());
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &Path) -> Outcome {
    let suite: Vec<(usize, u32)> = match (a.n_list.len(), a.d_list.len()) {
        (0, 0) => VerifyConfig::default().suite,
        (x, y) if x == y => a.n_list.iter().copied().zip(a.d_list.iter().copied()).collect(),
        (_, 1) => a.n_list.iter().map(|&n| (n, a.d_list[0])).collect(),
        (1, _) => a.d_list.iter().map(|&d| (a.n_list[0], d)).collect(),
        _ => return Err(Failure::Usage(anyhow!("--n-list and --d-list must have equal lengths or one value"))),
    };
    let provider: Box<dyn RangeFormulas> = match a.provider.as_str() {
        "sharp" => Box::new(SharpRanges),
        "literal" => Box::new(LiteralRanges::new(OddUpper::Stated)),
        "literal-even" => Box::new(LiteralRanges::new(OddUpper::EvenForm)),
        other => return Err(Failure::Usage(anyhow!("unknown provider '{other}' (sharp, literal, literal-even)"))),
    };
    let config = VerifyConfig { suite, budget: a.budget, probes: true };
    let report = match run_verification(&config, provider.as_ref()) {
        Ok(r) => r,
        Err(e @ OracleError::Budget { .. }) => return Err(Failure::Budget(anyhow!("{e}"))),
        Err(e) => return Err(Failure::Usage(anyhow!("{e}"))),
    };
    let mut text = Vec::new();
    report.write_text(&mut text).context("rendering report")?;
    print!("{}", String::from_utf8_lossy(&text));
    fs::write(out.join("verify_report.txt"), &text).context("writing verify_report.txt")?;
    write(out, "verify_report.json", &serde_json::to_string_pretty(&report).expect("json"))?;
    for t in &report.tables {
        let name = format!("lattice_n{}_d{}.csv", t.spec.n, t.spec.d);
        let file = fs::File::create(out.join(&name)).with_context(|| format!("creating {name}"))?;
        write_table_csv(t, file).map_err(|e| anyhow!("{e}"))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification("see the report above".into()))
    }
}

fn cmd_shortburst(a: &BurstArgs, out: &Path) -> Outcome {
    let g = match &a.geography {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Geography::from_json(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?
        }
        None => {
            let kind: GeographyKind = a.kind.parse().map_err(|e: String| anyhow!(e))?;
            synth_geography(kind, a.rows, a.cols, &a.lean, a.geo_seed.unwrap_or(a.seed)).map_err(|e| anyhow!("{e}"))?
        }
    };
    let party: Party = a.party.parse().map_err(|e: String| anyhow!(e))?;
    if a.districts < 2 || a.burst_len < 1 {
        return Err(Failure::Usage(anyhow!("need at least 2 districts and a burst length of at least 1")));
    }
    let cfg = BurstConfig {
        districts: a.districts,
        party,
        burst_len: a.burst_len,
        bursts: a.bursts,
        deviation: a.deviation.clone(),
        seed: a.seed,
    };
    let s = short_burst(&g, &cfg).map_err(|e| anyhow!("{e}"))?;
    let mut records = Vec::new();
    write_records_csv(&s.records, &mut records).context("rendering records")?;
    fs::write(out.join("records.csv"), records).context("writing records.csv")?;
    let mut buckets = Vec::new();
    write_buckets_csv(&s.buckets, &mut buckets).context("rendering buckets")?;
    fs::write(out.join("buckets.csv"), buckets).context("writing buckets.csv")?;
    write(out, "ranges.svg", &range_plot_svg(&s))?;
    write(out, "summary.json", &serde_json::to_string_pretty(&s).expect("json"))?;
    println!(
        "party {party}: vote share {}, {} plans, seed plan {} seats, best {} seats",
        format_both(&s.vote_share),
        s.records.len(),
        s.seed_seats(),
        s.best_seats()
    );
    for b in &s.buckets {
        println!(
            "  {} seats: {} plans, MM [{}, {}], PB [{}, {}], EG [{}, {}]",
            b.seats,
            b.plans,
            format_decimal(&b.mm.min, 4),
            format_decimal(&b.mm.max, 4),
            format_decimal(&b.pb.min, 4),
            format_decimal(&b.pb.max, 4),
            format_decimal(&b.eg.min, 4),
            format_decimal(&b.eg.max, 4)
        );
    }
    println!("outputs in {}", out.display());
    Ok(())
}
