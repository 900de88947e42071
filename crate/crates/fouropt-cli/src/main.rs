//! Command-line front end: list the move catalog, solve instances, verify
//! the implementation against its oracles, and benchmark the engines.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use fouropt::driver::{self, fit_loglog_slope, EngineChoice};
use fouropt::io::{load_instance, parse_instance_arg, random::random_euclidean, report::RunReport};
use fouropt::model::{tour_length, Costs, Tour};
use fouropt::symmetry::{orbit_id_of, orbit_partition};
use fouropt::verify::{self, VerifyOptions};
use fouropt::{Fault, Scheme};

#[derive(Parser)]
#[command(
    name = "fouropt",
    about = "True 4-opt moves for the symmetric TSP: catalog, search engines, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 25 pure reinsertion schemes.
    Schemes(SchemesArgs),
    /// List the 7 orbits of the schemes under the octic symmetry group.
    Orbits(OrbitsArgs),
    /// Run best-improvement local search on an instance.
    Solve(SolveArgs),
    /// Check the implementation against its independent oracles.
    Verify(VerifyArgs),
    /// Time best-move searches across instance sizes and fit the exponent.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SchemesArgs {
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OrbitsArgs {
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// TSPLIB file path, `random-euclidean:<n>[,box=B][,seed=S]`, or
    /// `random-matrix:<n>[,max=M][,seed=S]`.
    #[arg(long)]
    instance: String,
    /// Search engine: brute, deberg, glover, or hybrid.
    #[arg(long, default_value = "hybrid", value_parser = parse_engine)]
    engine: EngineChoice,
    /// Seed for generator instances that do not fix one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many applied moves.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Write a line-delimited JSON run report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance size for the numeric checks.
    #[arg(long, default_value_t = 12)]
    n: usize,
    /// Number of seeded instances per numeric check.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    /// Inject a known defect (c-tilde-sign, glover-branch, label-map); the
    /// suite must then fail, demonstrating the checks have teeth.
    #[arg(long, value_parser = parse_fault)]
    corrupt: Option<Fault>,
}

#[derive(Args)]
struct BenchArgs {
    /// Search engine: brute, deberg, glover, or hybrid.
    #[arg(long, default_value = "deberg", value_parser = parse_engine)]
    engine: EngineChoice,
    /// Comma-separated instance sizes, e.g. 50,100,200,400.
    #[arg(long, value_parser = parse_sizes)]
    sizes: Sizes,
    /// Seed for the generated instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone)]
struct Sizes(Vec<usize>);

fn parse_engine(s: &str) -> Result<EngineChoice, String> {
    EngineChoice::parse(s)
        .ok_or_else(|| format!("unknown engine {s:?} (expected brute, deberg, glover, or hybrid)"))
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    Fault::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Fault::ALL.iter().map(|f| f.name()).collect();
        format!("unknown fault {s:?} (expected one of {})", names.join(", "))
    })
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let sizes: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    let sizes = sizes.map_err(|_| format!("bad size list {s:?}"))?;
    if sizes.is_empty() {
        return Err("size list is empty".into());
    }
    if let Some(&bad) = sizes.iter().find(|&&n| n < 8) {
        return Err(format!("size {bad} is too small (moves need n >= 8)"));
    }
    Ok(Sizes(sizes))
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (`fouropt schemes | head`) instead of
    // panicking: restore the default SIGPIPE disposition Rust masks.
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

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Schemes(args) => cmd_schemes(args),
        Command::Orbits(args) => cmd_orbits(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn cmd_schemes(args: SchemesArgs) -> anyhow::Result<ExitCode> {
    if args.json {
        let entries: Vec<serde_json::Value> = Scheme::all()
            .map(|r| {
                let perm = r.signed_perm();
                let edges: Vec<String> = r
                    .inserted_edge_templates()
                    .iter()
                    .map(|e| e.to_string())
                    .collect();
                serde_json::json!({
                    "id": r.id(),
                    "name": r.to_string(),
                    "signed_permutation": perm,
                    "inserted_edges": edges,
                    "orbit": orbit_id_of(r),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        println!(
            "{:<5} {:<14} {:<7} inserted edges",
            "id", "permutation", "orbit"
        );
        for r in Scheme::all() {
            let edges: Vec<String> = r
                .inserted_edge_templates()
                .iter()
                .map(|e| e.to_string())
                .collect();
            println!(
                "{:<5} {:<14} {:<7} {}",
                r.to_string(),
                r.perm_string(),
                orbit_id_of(r),
                edges.join(" ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbits(args: OrbitsArgs) -> anyhow::Result<ExitCode> {
    let orbits = orbit_partition();
    if args.json {
        let entries: Vec<serde_json::Value> = orbits
            .iter()
            .enumerate()
            .map(|(k, o)| {
                let members: Vec<String> = o.members.iter().map(|r| r.to_string()).collect();
                serde_json::json!({
                    "orbit": k + 1,
                    "representative": o.representative.to_string(),
                    "size": o.members.len(),
                    "members": members,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        println!(
            "{:<7} {:<15} {:<6} members",
            "orbit", "representative", "size"
        );
        for (k, o) in orbits.iter().enumerate() {
            let members: Vec<String> = o.members.iter().map(|r| r.to_string()).collect();
            println!(
                "{:<7} {:<15} {:<6} {}",
                k + 1,
                o.representative.to_string(),
                o.members.len(),
                members.join(" ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<ExitCode> {
    let source = parse_instance_arg(&args.instance, args.seed)?;
    let instance = load_instance(&source)
        .with_context(|| format!("failed to load instance {:?}", args.instance))?;
    let n = instance.costs.n();
    let start = Tour::canonical(n);
    let (tour, stats) = driver::local_search(&instance.costs, &start, args.engine, args.max_iters)?;
    println!("instance {} (n={n})", instance.name);
    println!("engine {}", stats.engine);
    println!("initial length {}", stats.initial_length);
    println!(
        "applied {} moves in {:.3}s",
        stats.iterations,
        stats.total_time.as_secs_f64()
    );
    println!("final length {}", stats.final_length);
    debug_assert_eq!(tour_length(&tour, &instance.costs)?, stats.final_length);
    if let Some(path) = args.out {
        let report = RunReport::from_run(&instance.name, n, &stats, &tour);
        std::fs::write(&path, report.to_lines())
            .with_context(|| format!("failed to write report to {}", path.display()))?;
        println!("report written to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let opts = VerifyOptions {
        n: args.n,
        seeds: args.seeds,
        fault: args.corrupt,
    };
    if let Some(fault) = args.corrupt {
        println!("injecting fault {fault}: the suite must FAIL");
    }
    let report = verify::run(&opts);
    for check in &report.checks {
        let verdict = if check.pass { "PASS" } else { "FAIL" };
        println!("check {} ... {verdict} ({})", check.name, check.detail);
    }
    if report.ok() {
        println!("all {} checks passed", report.checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        println!("{failed} of {} checks failed", report.checks.len());
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<ExitCode> {
    let Sizes(sizes) = args.sizes;
    if args.engine == EngineChoice::Brute && sizes.iter().any(|&n| n > 200) {
        bail!("brute-force timing above n=200 is impractical; pick smaller sizes");
    }
    println!("engine {}", args.engine);
    println!("{:>8} {:>12} {:>14}", "n", "seconds", "evaluated");
    let mut samples = Vec::new();
    for &n in &sizes {
        let costs = random_euclidean(n, 1000, args.seed);
        let started = Instant::now();
        let result = driver::best_move(&costs, args.engine, false);
        let seconds = started.elapsed().as_secs_f64();
        println!("{n:>8} {seconds:>12.4} {:>14}", result.evaluated);
        samples.push((n as f64, seconds));
    }
    if samples.len() >= 2 {
        println!("fitted log-log slope: {:.2}", fit_loglog_slope(&samples));
    }
    Ok(ExitCode::SUCCESS)
}
