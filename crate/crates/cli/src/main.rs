//! `bessel`: tables, exhaustive verification suites and step traces.
//!
//! Exit codes: 0 pass, 1 verification failure or violated precondition,
//! 2 usage error, 3 infeasible bounds.

mod trace;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use bessel_core::exact_numbers::{
    triangle, verify_inverse, verify_log_concavity, Family, TABLE_MAX_N,
};
use bessel_core::injections::{verify_ik, verify_ik_cell, verify_is, verify_is_cell};
use bessel_core::involutions::{verify_involution, verify_involution_range, InvolutionFamily};
use bessel_core::polynomials::verify_lemmas;
use bessel_core::report::VerificationReport;
use bessel_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const DEFAULT_SEED: u64 = 20240;

#[derive(Parser)]
#[command(
    name = "bessel",
    version,
    about = "Bessel numbers, matchings and their bijective proofs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a triangle of numbers for 0 <= k <= n <= n_max.
    Table {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run an exhaustive or randomized verification suite.
    Verify(VerifyArgs),
    /// Show one application of a map step by step.
    Trace {
        #[command(subcommand)]
        map: trace::TraceMap,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Inverse,
    #[value(name = "involution-i1")]
    InvolutionI1,
    #[value(name = "involution-i2")]
    InvolutionI2,
    #[value(name = "injection-ik")]
    InjectionIk,
    #[value(name = "injection-is")]
    InjectionIs,
    Logconcave,
    Lemmas,
    All,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Upper bound on n (inverse, involutions, logconcave, lemmas).
    #[arg(long)]
    n_max: Option<u32>,
    /// Single n (involutions, injection-is).
    #[arg(long)]
    n: Option<u32>,
    /// Single l (involutions).
    #[arg(long, requires = "n")]
    l: Option<u32>,
    /// Single k (injection-is).
    #[arg(long, requires = "n")]
    k: Option<u32>,
    /// Largest ambient graph K_N (injection-ik).
    #[arg(long)]
    ambient_max: Option<u32>,
    /// Single ambient graph (injection-ik).
    #[arg(long, requires = "size")]
    ambient: Option<u32>,
    /// Size of the smaller matching (injection-ik, with --ambient).
    #[arg(long, requires = "ambient")]
    size: Option<u32>,
    /// Bound on 2n-k (injection-is).
    #[arg(long)]
    nk_bound: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of random Wilf round trips.
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
}

fn parse_family(text: &str) -> Result<Family, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Infeasible(_) => 3,
        Error::Parse(_) | Error::UnknownFamily(_) => 2,
        _ => 1,
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(err))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Table {
            family,
            n_max,
            format,
        } => cmd_table(family, n_max, format),
        Command::Verify(args) => cmd_verify(&args),
        Command::Trace { map } => match trace::run(&map) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(err) => fail(&err),
        },
    }
}

#[derive(Serialize)]
struct JsonRow {
    n: u32,
    values: Vec<String>,
}

fn cmd_table(family: Family, n_max: u32, format: TableFormat) -> ExitCode {
    if n_max > TABLE_MAX_N {
        return fail(&Error::Infeasible(format!(
            "tables go up to n = {TABLE_MAX_N}, got {n_max}"
        )));
    }
    let rows = triangle(family, n_max);
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("n,k,value\n");
            for row in &rows {
                for (k, v) in row.iter() {
                    writeln!(out, "{},{k},{v}", row.n).unwrap();
                }
            }
        }
        TableFormat::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|row| JsonRow {
                    n: row.n,
                    values: row.entries.iter().map(|v| v.to_string()).collect(),
                })
                .collect();
            out = serde_json::to_string(&json).expect("rows serialize");
            out.push('\n');
        }
        TableFormat::Text => {
            for row in &rows {
                let values: Vec<String> = row.entries.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}: {}", row.n, values.join(" ")).unwrap();
            }
        }
    }
    print!("{out}");
    ExitCode::SUCCESS
}

fn run_suite(suite: Suite, args: &VerifyArgs) -> bessel_core::Result<VerificationReport> {
    let involution = |family| match (args.n, args.l) {
        (Some(n), Some(l)) => verify_involution(family, n, l),
        (Some(n), None) => {
            let mut report = VerificationReport::new(format!("involution-{family}"));
            for l in 0..=n {
                let sub = verify_involution(family, n, l)?;
                report.wall_time += sub.wall_time;
                for cell in sub.cells {
                    report.push_cell(cell, None);
                }
                report.passed &= sub.passed;
                if report.counterexample.is_none() {
                    report.counterexample = sub.counterexample;
                }
            }
            Ok(report)
        }
        _ => verify_involution_range(family, args.n_max.unwrap_or(7)),
    };
    match suite {
        Suite::Inverse => verify_inverse(args.n_max.unwrap_or(30)),
        Suite::InvolutionI1 => involution(InvolutionFamily::I1),
        Suite::InvolutionI2 => involution(InvolutionFamily::I2),
        Suite::InjectionIk => match (args.ambient, args.size) {
            (Some(ambient), Some(size)) => verify_ik_cell(ambient, size),
            _ => verify_ik(args.ambient_max.unwrap_or(10)),
        },
        Suite::InjectionIs => match (args.n, args.k) {
            (Some(n), Some(k)) => verify_is_cell(n, k),
            _ => verify_is(args.nk_bound.unwrap_or(10)),
        },
        Suite::Logconcave => verify_log_concavity(args.n_max.unwrap_or(30)),
        Suite::Lemmas => verify_lemmas(args.n_max.unwrap_or(12), args.seed, args.trials),
        Suite::All => {
            let mut report = VerificationReport::new("all");
            let defaults = VerifyArgs {
                suite: Suite::All,
                n_max: None,
                n: None,
                l: None,
                k: None,
                ambient_max: None,
                ambient: None,
                size: None,
                nk_bound: None,
                seed: args.seed,
                trials: args.trials,
                format: args.format,
                parallelism: args.parallelism,
            };
            for s in [
                Suite::Inverse,
                Suite::InvolutionI1,
                Suite::InvolutionI2,
                Suite::InjectionIk,
                Suite::InjectionIs,
                Suite::Logconcave,
                Suite::Lemmas,
            ] {
                report.absorb(run_suite(s, &defaults)?);
            }
            Ok(report)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallelism)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let started = Instant::now();
    let report = match pool.install(|| run_suite(args.suite, args)) {
        Ok(report) => report,
        Err(err @ Error::Precondition(_)) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
        Err(err) => return fail(&err),
    };
    match args.format {
        ReportFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        ReportFormat::Text => print!("{}", report.to_text()),
    }
    eprintln!("wall time: {:.3?}", started.elapsed());
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
