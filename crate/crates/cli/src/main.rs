//! `pwlchaos` — exact analysis of continuous piecewise-linear interval maps.
//!
//! Exit codes: 0 success, 1 when a sought property is absent (no horseshoe,
//! no chaos evidence, a red consistency flag), 2 on input errors.

mod config;
mod render;

use std::cmp::Ordering;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pwlchaos::chaos::{
    invariant_intervals, ly_density_sample_records, snoha_interval_criterion, Classification,
};
use pwlchaos::entropy::{entropy_lapcount_budget, entropy_lower_bound_horseshoe};
use pwlchaos::horseshoe::find_horseshoe;
use pwlchaos::markov::{markov_partition, perron_root};
use pwlchaos::periodic::{period_set_budget, periodic_points_budget, sharkovskii_type_estimate};
use pwlchaos::report::{catalog_self_test, corollary_report};
use pwlchaos::sharkovskii::sharkovskii_compare;
use pwlchaos::catalog::all as catalog_entries;
use pwlchaos::{builtin, ClosedInterval, Error as CoreError, PwlMap, Rational};

use config::{ConfigFile, Settings};

#[derive(Parser)]
#[command(
    name = "pwlchaos",
    version,
    about = "Exact-arithmetic analysis of continuous piecewise-linear interval maps",
    after_help = "Exit codes: 0 success; 1 sought property absent; 2 input error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Map file in the text format (one `<x> <y>` node per line).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "builtin")]
    map: Option<PathBuf>,

    /// Built-in catalog map name (see `catalog`).
    #[arg(long, global = true, value_name = "NAME")]
    builtin: Option<String>,

    /// Emit one machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the deterministic samplers.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Tolerance for the Perron-root bracket.
    #[arg(long, global = true, value_name = "TOL")]
    tol: Option<f64>,

    /// JSON config file with defaults; flags still take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in maps.
    Catalog,
    /// Evaluate the map at an exact rational point.
    Eval(EvalArgs),
    /// Entropy estimates by every available method.
    Entropy(EntropyArgs),
    /// Search for a horseshoe of the given iterate.
    Horseshoe(HorseshoeArgs),
    /// Minimal periods realized up to a bound, with the orbits.
    Periods(PeriodsArgs),
    /// Sharkovskii-type classification from the detected periods.
    Type(TypeArgs),
    /// Compare two periods in the Sharkovskii order.
    Compare(CompareArgs),
    /// Monte Carlo Li-Yorke pair sampling.
    LySample(LySampleArgs),
    /// Exact interval-image criterion on a dyadic grid.
    SnohaGrid(SnohaArgs),
    /// Non-degenerate invariant intervals over candidate endpoints.
    InvariantIntervals(InvariantArgs),
    /// Run every analysis and the consistency harness.
    Report(ReportArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Point to evaluate, as `p/q` or an integer.
    x: String,
}

#[derive(Args)]
struct EntropyArgs {
    /// Orbit-closure budget for the Markov partition.
    #[arg(long, value_name = "N")]
    markov_steps: Option<u32>,
    /// Largest iterate for the lap-count estimator.
    #[arg(long, value_name = "N")]
    lap_max: Option<u32>,
    /// Largest iterate probed for horseshoes.
    #[arg(long, value_name = "N")]
    horseshoe_max: Option<u32>,
}

#[derive(Args)]
struct HorseshoeArgs {
    /// Which iterate to search.
    #[arg(long, value_name = "N", default_value_t = 1)]
    iterate: u32,
}

#[derive(Args)]
struct PeriodsArgs {
    /// Largest period to solve for.
    #[arg(long = "max", value_name = "P")]
    max: Option<u32>,
}

#[derive(Args)]
struct TypeArgs {
    /// Largest period to solve for.
    #[arg(long = "max", value_name = "P")]
    max: Option<u32>,
}

#[derive(Args)]
struct CompareArgs {
    m: u64,
    n: u64,
}

#[derive(Args)]
struct LySampleArgs {
    /// Number of sampled pairs.
    #[arg(long, value_name = "N")]
    pairs: Option<usize>,
    /// Separation modulus the limsup surrogate must exceed.
    #[arg(long, value_name = "D")]
    delta: Option<f64>,
    /// Proximity threshold standing in for liminf = 0.
    #[arg(long, value_name = "E")]
    eps_close: Option<f64>,
    /// Iteration steps per pair.
    #[arg(long, value_name = "T")]
    horizon: Option<u32>,
    /// Steps ignored before separations count.
    #[arg(long, value_name = "B")]
    burn_in: Option<u32>,
    /// Fraction of positive pairs required for an evidence verdict.
    #[arg(long, value_name = "F")]
    threshold: Option<f64>,
    /// Write one CSV row per pair to this file (`-` for stdout).
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SnohaArgs {
    /// Grid resolution: cells of width 2^-k.
    #[arg(long, value_name = "K")]
    grid_k: Option<u32>,
    /// Required image growth, an exact rational.
    #[arg(long, value_name = "RAT")]
    delta: Option<String>,
    /// Allowed distance between image sequences, an exact rational.
    #[arg(long, value_name = "RAT")]
    eps: Option<String>,
    /// Number of exact image steps.
    #[arg(long, value_name = "T")]
    horizon: Option<u32>,
}

#[derive(Args)]
struct InvariantArgs {
    /// Extra candidate endpoints, comma-separated rationals.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    extra: Vec<String>,
}

#[derive(Args)]
struct ReportArgs {
    /// Pairs for the embedded Li-Yorke sampler.
    #[arg(long, value_name = "N")]
    pairs: Option<usize>,
    /// Largest period to solve for.
    #[arg(long, value_name = "P")]
    p_max: Option<u32>,
    /// Largest iterate for the lap-count estimator.
    #[arg(long, value_name = "N")]
    lap_max: Option<u32>,
}

fn main() -> ExitCode {
    // die quietly on a closed pipe (`pwlchaos catalog | head`) like any
    // other unix filter
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file_config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut settings = Settings::resolve(&file_config)?;
    if let Some(seed) = cli.seed {
        settings.seed = seed;
    }
    if let Some(tol) = cli.tol {
        if tol <= 0.0 {
            bail!("--tol must be positive");
        }
        settings.tol = tol;
    }

    match &cli.command {
        Command::Catalog => cmd_catalog(cli.json),
        Command::Compare(args) => cmd_compare(args, cli.json),
        Command::Eval(args) => cmd_eval(&resolve_map(&cli)?, args, cli.json),
        Command::Entropy(args) => cmd_entropy(&resolve_map(&cli)?, args, &settings, cli.json),
        Command::Horseshoe(args) => cmd_horseshoe(&resolve_map(&cli)?, args, cli.json),
        Command::Periods(args) => cmd_periods(&resolve_map(&cli)?, args, &settings, cli.json),
        Command::Type(args) => cmd_type(&resolve_map(&cli)?, args, &settings, cli.json),
        Command::LySample(args) => cmd_ly_sample(&resolve_map(&cli)?, args, &settings, cli.json),
        Command::SnohaGrid(args) => cmd_snoha(&resolve_map(&cli)?, args, &settings, cli.json),
        Command::InvariantIntervals(args) => {
            cmd_invariant_intervals(&resolve_map(&cli)?, args, cli.json)
        }
        Command::Report(args) => cmd_report(&cli, args, &settings),
    }
}

/// Resolved map plus the name used for it in output.
struct NamedMap {
    name: String,
    map: PwlMap,
}

fn resolve_map(cli: &Cli) -> Result<NamedMap> {
    match (&cli.map, &cli.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading map file {}", path.display()))?;
            let map = PwlMap::parse_text(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
            Ok(NamedMap {
                name: path.display().to_string(),
                map,
            })
        }
        (None, Some(name)) => {
            let map = builtin(name).ok_or_else(|| {
                anyhow!("no built-in map named `{name}` (try `pwlchaos catalog` for the list)")
            })?;
            Ok(NamedMap {
                name: name.clone(),
                map,
            })
        }
        (None, None) => bail!("a map is required: pass --map <FILE> or --builtin <NAME>"),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with prevents this"),
    }
}

fn emit_json<T: Serialize>(doc: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(doc)?);
    Ok(())
}

fn cmd_catalog(json: bool) -> Result<ExitCode> {
    #[derive(Serialize)]
    struct Entry {
        name: &'static str,
        nodes: String,
        description: &'static str,
    }
    let entries: Vec<Entry> = catalog_entries()
        .into_iter()
        .map(|e| Entry {
            name: e.name,
            nodes: e.map.to_text().replace('\n', "; "),
            description: e.description,
        })
        .collect();
    if json {
        emit_json(&entries)?;
    } else {
        for e in &entries {
            println!("{:12} {}", e.name, e.nodes);
            println!("{:12}   {}", "", e.description);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: &CompareArgs, json: bool) -> Result<ExitCode> {
    if args.m == 0 || args.n == 0 {
        bail!("periods are positive integers");
    }
    let ordering = sharkovskii_compare(args.m, args.n);
    let symbol = match ordering {
        Ordering::Less => "◁",
        Ordering::Equal => "=",
        Ordering::Greater => "⊳",
    };
    #[derive(Serialize)]
    struct Doc {
        m: u64,
        n: u64,
        ordering: &'static str,
        rendered: String,
    }
    let doc = Doc {
        m: args.m,
        n: args.n,
        ordering: match ordering {
            Ordering::Less => "before",
            Ordering::Equal => "equal",
            Ordering::Greater => "after",
        },
        rendered: format!("{} {} {}", args.m, symbol, args.n),
    };
    if json {
        emit_json(&doc)?;
    } else {
        println!("{}", doc.rendered);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(named: &NamedMap, args: &EvalArgs, json: bool) -> Result<ExitCode> {
    let x: Rational = args.x.parse().map_err(|e| anyhow!("argument x: {e}"))?;
    let value = named.map.eval(&x).map_err(|e| anyhow!("{e}"))?;
    #[derive(Serialize)]
    struct Doc {
        map: String,
        x: Rational,
        value: Rational,
    }
    let doc = Doc {
        map: named.name.clone(),
        x,
        value,
    };
    if json {
        emit_json(&doc)?;
    } else {
        println!("f({}) = {}", doc.x, doc.value);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_entropy(
    named: &NamedMap,
    args: &EntropyArgs,
    settings: &Settings,
    json: bool,
) -> Result<ExitCode> {
    let markov_steps = args.markov_steps.unwrap_or(settings.markov_steps);
    let lap_max = args.lap_max.unwrap_or(settings.lap_iterates);
    let horseshoe_max = args.horseshoe_max.unwrap_or(settings.horseshoe_max);

    let markov_data = markov_partition(&named.map, markov_steps);
    let markov_section = markov_data.as_ref().map(|data| {
        let root = perron_root(&data.matrix, settings.tol);
        let value = if root.value <= 1.0 {
            0.0
        } else {
            root.value.ln()
        };
        (data, root, value)
    });
    let lapcount = entropy_lapcount_budget(&named.map, lap_max, settings.node_budget);
    let bound = entropy_lower_bound_horseshoe(&named.map, horseshoe_max);

    #[derive(Serialize)]
    struct MarkovDoc {
        cuts: Vec<Rational>,
        matrix_rows: Vec<String>,
        irreducible: bool,
        perron: pwlchaos::PerronRoot,
        entropy: f64,
    }
    #[derive(Serialize)]
    struct Doc {
        map: String,
        markov: Option<MarkovDoc>,
        lapcount: Option<pwlchaos::entropy::LapCountEstimate>,
        lapcount_error: Option<String>,
        horseshoe_bound: pwlchaos::EntropyEstimate,
    }
    let doc = Doc {
        map: named.name.clone(),
        markov: markov_section.map(|(data, perron, entropy)| MarkovDoc {
            cuts: data.cuts.clone(),
            matrix_rows: data.matrix_digit_rows(),
            irreducible: data.is_irreducible(),
            perron,
            entropy,
        }),
        lapcount: lapcount.as_ref().ok().cloned(),
        lapcount_error: lapcount.err().map(|e| e.to_string()),
        horseshoe_bound: bound,
    };

    if json {
        emit_json(&doc)?;
    } else {
        match &doc.markov {
            Some(m) => {
                let cuts: Vec<String> = m.cuts.iter().map(|c| c.to_string()).collect();
                println!(
                    "markov partition: cuts {{{}}}, matrix rows {}, irreducible: {}",
                    cuts.join(", "),
                    m.matrix_rows.join(" "),
                    m.irreducible
                );
                println!(
                    "entropy (markov/perron): {}   [perron root {} in [{}, {}], {} iterations]",
                    render::sig12(m.entropy),
                    render::sig12(m.perron.value),
                    render::sig12(m.perron.lower),
                    render::sig12(m.perron.upper),
                    m.perron.iterations
                );
            }
            None => println!("markov partition: none within {markov_steps} orbit steps"),
        }
        match (&doc.lapcount, &doc.lapcount_error) {
            (Some(est), _) => println!("{}", render::lapcount(est)),
            (None, Some(err)) => println!("entropy (lap-count growth): failed: {err}"),
            (None, None) => {}
        }
        println!(
            "{}",
            render::estimate("entropy (horseshoe lower bound)", &doc.horseshoe_bound)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_horseshoe(named: &NamedMap, args: &HorseshoeArgs, json: bool) -> Result<ExitCode> {
    if args.iterate == 0 {
        bail!("--iterate must be at least 1");
    }
    let found = match find_horseshoe(&named.map, args.iterate) {
        Ok(found) => found,
        Err(e @ CoreError::NodeBudget { .. }) => bail!("{e}"),
        Err(e) => bail!("{e}"),
    };
    #[derive(Serialize)]
    struct Doc {
        map: String,
        iterate: u32,
        found: bool,
        certificate: Option<pwlchaos::HorseshoeCertificate>,
    }
    let doc = Doc {
        map: named.name.clone(),
        iterate: args.iterate,
        found: found.is_some(),
        certificate: found,
    };
    if json {
        emit_json(&doc)?;
    } else {
        match &doc.certificate {
            Some(cert) => println!("horseshoe found: {}", render::certificate(cert)),
            None => println!(
                "not found: no horseshoe for iterate {} (search covers pairs of monotone pieces)",
                args.iterate
            ),
        }
    }
    Ok(if doc.found {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_periods(
    named: &NamedMap,
    args: &PeriodsArgs,
    settings: &Settings,
    json: bool,
) -> Result<ExitCode> {
    let p_max = args.max.unwrap_or(settings.period_bound);
    let set = period_set_budget(&named.map, p_max, settings.node_budget);

    #[derive(Serialize)]
    struct PeriodDoc {
        period: u32,
        orbits: Vec<pwlchaos::PeriodicOrbit>,
        diagonal_ranges: Vec<ClosedInterval>,
    }
    #[derive(Serialize)]
    struct Doc {
        map: String,
        periods: Vec<u32>,
        requested_bound: u32,
        achieved_bound: u32,
        detail: Vec<PeriodDoc>,
    }
    let mut detail = Vec::new();
    for p in 1..=set.achieved_bound {
        let solve = periodic_points_budget(&named.map, p, settings.node_budget)
            .map_err(|e| anyhow!("{e}"))?;
        if !solve.orbits.is_empty() || !solve.diagonal_ranges.is_empty() {
            detail.push(PeriodDoc {
                period: p,
                orbits: solve.orbits,
                diagonal_ranges: solve.diagonal_ranges,
            });
        }
    }
    let doc = Doc {
        map: named.name.clone(),
        periods: set.periods.iter().copied().collect(),
        requested_bound: set.requested_bound,
        achieved_bound: set.achieved_bound,
        detail,
    };

    if json {
        emit_json(&doc)?;
    } else {
        let periods: Vec<String> = doc.periods.iter().map(|p| p.to_string()).collect();
        println!(
            "periods up to {}: {{{}}}",
            doc.achieved_bound,
            periods.join(", ")
        );
        if doc.achieved_bound < doc.requested_bound {
            println!(
                "(partial: node budget stopped the search at {} of {})",
                doc.achieved_bound, doc.requested_bound
            );
        }
        for d in &doc.detail {
            for orbit in &d.orbits {
                let pts: Vec<String> = orbit.points.iter().map(|p| p.to_string()).collect();
                println!("  period {}: {}", d.period, pts.join(" -> "));
            }
            for range in &d.diagonal_ranges {
                println!(
                    "  period {} (diagonal range, excluded from the period set{}): all of {}",
                    d.period,
                    if d.period == 1 {
                        " except period 1"
                    } else {
                        ""
                    },
                    range
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_type(
    named: &NamedMap,
    args: &TypeArgs,
    settings: &Settings,
    json: bool,
) -> Result<ExitCode> {
    let p_max = args.max.unwrap_or(settings.period_bound);
    let verdict = sharkovskii_type_estimate(&named.map, p_max);
    if json {
        emit_json(&verdict)?;
    } else {
        println!("{}", render::type_verdict(&verdict));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ly_sample(
    named: &NamedMap,
    args: &LySampleArgs,
    settings: &Settings,
    json: bool,
) -> Result<ExitCode> {
    let base = settings.ly;
    let params = pwlchaos::LyParams::new(
        args.delta.unwrap_or(base.delta),
        args.eps_close.unwrap_or(base.eps_close),
        args.horizon.unwrap_or(base.horizon),
        args.burn_in.unwrap_or(base.burn_in),
    )
    .map_err(|e| anyhow!("{e}"))?;
    let pairs = args.pairs.unwrap_or(settings.pairs);
    let threshold = args.threshold.unwrap_or(settings.threshold);

    let (verdict, records) =
        ly_density_sample_records(&named.map, &params, pairs, settings.seed, threshold);

    if let Some(path) = &args.csv {
        let mut rows = String::from("x,y,max_sep,min_sep,is_ly\n");
        for r in &records {
            rows.push_str(&format!(
                "{},{},{},{},{}\n",
                r.x, r.y, r.max_sep, r.min_sep, r.is_ly
            ));
        }
        if path.as_os_str() == "-" {
            std::io::stdout().write_all(rows.as_bytes())?;
        } else {
            std::fs::write(path, rows)
                .with_context(|| format!("writing csv to {}", path.display()))?;
        }
    }

    if json {
        emit_json(&verdict)?;
    } else {
        println!("{}", render::chaos_verdict("li-yorke sampling", &verdict));
    }
    Ok(match verdict.classification {
        Classification::DenseChaosEvidence => ExitCode::SUCCESS,
        Classification::NoEvidence => ExitCode::from(1),
    })
}

fn cmd_snoha(
    named: &NamedMap,
    args: &SnohaArgs,
    settings: &Settings,
    json: bool,
) -> Result<ExitCode> {
    let grid_k = args.grid_k.unwrap_or(settings.grid_k);
    if grid_k == 0 || grid_k > 12 {
        bail!("--grid-k must be between 1 and 12");
    }
    let delta = match &args.delta {
        Some(s) => s.parse::<Rational>().map_err(|e| anyhow!("--delta: {e}"))?,
        None => settings.snoha_delta.clone(),
    };
    let eps = match &args.eps {
        Some(s) => s.parse::<Rational>().map_err(|e| anyhow!("--eps: {e}"))?,
        None => settings.snoha_eps.clone(),
    };
    if delta <= Rational::zero() {
        bail!("--delta must be positive");
    }
    if eps < Rational::zero() {
        bail!("--eps must be nonnegative");
    }
    let horizon = args.horizon.unwrap_or(settings.snoha_horizon);
    let verdict = snoha_interval_criterion(&named.map, grid_k, &delta, &eps, horizon);
    if json {
        emit_json(&verdict)?;
    } else {
        println!(
            "{}",
            render::chaos_verdict("interval-grid criterion", &verdict)
        );
    }
    Ok(match verdict.classification {
        Classification::DenseChaosEvidence => ExitCode::SUCCESS,
        Classification::NoEvidence => ExitCode::from(1),
    })
}

fn cmd_invariant_intervals(named: &NamedMap, args: &InvariantArgs, json: bool) -> Result<ExitCode> {
    let mut extras = Vec::new();
    for raw in &args.extra {
        extras.push(
            raw.parse::<Rational>()
                .map_err(|e| anyhow!("--extra `{raw}`: {e}"))?,
        );
    }
    let intervals = invariant_intervals(&named.map, &extras);
    #[derive(Serialize)]
    struct Doc {
        map: String,
        invariant_intervals: Vec<ClosedInterval>,
    }
    let doc = Doc {
        map: named.name.clone(),
        invariant_intervals: intervals,
    };
    if json {
        emit_json(&doc)?;
    } else {
        for j in &doc.invariant_intervals {
            println!("{j}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(cli: &Cli, args: &ReportArgs, settings: &Settings) -> Result<ExitCode> {
    // catalog self-test gates every report run
    let mut options = settings.report_options(args.pairs.unwrap_or(2_000));
    if let Some(p) = args.p_max {
        options.period_bound = p;
    }
    if let Some(n) = args.lap_max {
        options.lapcount_iterates = n;
    }
    let failures = catalog_self_test(&options);
    if !failures.is_empty() {
        for f in &failures {
            eprintln!("catalog self-test failed: {f}");
        }
        bail!("catalog self-test failed ({} mismatches)", failures.len());
    }

    let named = resolve_map(cli)?;
    let doc = corollary_report(&named.name, &named.map, &options);

    if cli.json {
        emit_json(&doc)?;
    } else {
        print!("{}", render::report(&doc));
    }
    let ok = match &doc.consistency.checks {
        Some(checks) => checks.all_green,
        None => true, // vacuous
    };
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
