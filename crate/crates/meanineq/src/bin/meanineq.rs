//! Command-line harness: randomized verification suites, gap tables and
//! the registry listing.
//!
//! Exit codes: 0 when every checked statement holds, 1 on an inequality
//! violation, 2 on usage or domain errors.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use meanineq::registry::gap::{gap_report, to_csv, to_json, weight_grid};
use meanineq::registry::report::{replay, run_suite, ReplayInstance, SuiteConfig};
use meanineq::registry::{registry, MANIFEST};

#[derive(Parser)]
#[command(name = "meanineq", about = "Verified multi-term refinements of Young and Heinz type inequalities", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized verification over the registry.
    Verify(VerifyArgs),
    /// Tabulate refinement gaps against the classical baselines.
    Gap(GapArgs),
    /// List registry entries and the results they cover.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    /// Entry filter; `all` or a `*` wildcard pattern like `scalar.*`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Random trials per entry.
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Suite seed; identical seeds give byte-identical reports (modulo
    /// wall time).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Matrix dimensions to cycle through.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4, 8])]
    dims: Vec<usize>,
    /// Maximum refinement depth.
    #[arg(long, default_value_t = 4)]
    nmax: u32,
    /// Relative tolerance for margins.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Re-evaluate one serialized instance instead of sampling.
    #[arg(long)]
    replay: Option<String>,
}

#[derive(Args)]
struct GapArgs {
    /// Scalar registry entry to tabulate (e.g. scalar.young.refined).
    #[arg(long)]
    entry: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Weight grid as lo:hi:step.
    #[arg(long = "nu-grid", default_value = "0:1:0.0625")]
    nu_grid: String,
    /// Maximum refinement depth.
    #[arg(long, default_value_t = 8)]
    nmax: u32,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> meanineq::Result<ExitCode> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Gap(args) => gap(args),
        Command::List => {
            for entry in registry() {
                println!("{:28} {}", entry.id, entry.paper_location);
            }
            println!("\n{} entries covering {} results", registry().len(), MANIFEST.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(args: VerifyArgs) -> meanineq::Result<ExitCode> {
    if let Some(path) = &args.replay {
        let text = fs::read_to_string(path)
            .map_err(|e| meanineq::Error::Usage(format!("cannot read {path}: {e}")))?;
        let inst: ReplayInstance = serde_json::from_str(&text)
            .map_err(|e| meanineq::Error::Usage(format!("cannot parse {path}: {e}")))?;
        let outcome = replay(&inst)?;
        println!("{}", serde_json::to_string_pretty(&outcome).expect("outcome serialization"));
        return Ok(if outcome.margin >= -args.tol {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let cfg = SuiteConfig {
        filter: args.suite,
        trials: args.trials,
        seed: args.seed,
        dims: args.dims,
        depth_max: args.nmax,
        tol: args.tol,
    };
    let report = run_suite(&cfg)?;
    let json = report.to_json();
    match &args.out {
        Some(path) => fs::write(path, &json)
            .map_err(|e| meanineq::Error::Usage(format!("cannot write {path}: {e}")))?,
        None => print!("{json}"),
    }
    for entry in &report.entries {
        eprintln!(
            "{} {:28} worst margin {:+.3e}",
            if entry.pass { "PASS" } else { "FAIL" },
            entry.id,
            entry.worst_margin
        );
    }
    if report.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("violations found; worst instances are embedded in the report for --replay");
        Ok(ExitCode::from(1))
    }
}

fn gap(args: GapArgs) -> meanineq::Result<ExitCode> {
    let parts: Vec<&str> = args.nu_grid.split(':').collect();
    if parts.len() != 3 {
        return Err(meanineq::Error::Usage(format!(
            "--nu-grid expects lo:hi:step, got `{}`",
            args.nu_grid
        )));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| meanineq::Error::Usage(format!("bad grid number `{s}`")))
    };
    let grid = weight_grid(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)?;
    let rows = gap_report(&args.entry, args.a, args.b, &grid, args.nmax)?;
    let text = match args.format.as_str() {
        "csv" => to_csv(&rows),
        "json" => to_json(&rows),
        other => {
            return Err(meanineq::Error::Usage(format!(
                "format must be csv or json, got `{other}`"
            )))
        }
    };
    match &args.out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| meanineq::Error::Usage(format!("cannot write {path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
