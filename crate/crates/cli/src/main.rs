//! Command-line verification harness for the genus-2 cover censuses.
//!
//! Exit codes: 0 all checks pass, 1 a verification counterexample was
//! found, 2 I/O failure, 64 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "hurwitz-slope",
    version,
    about = "Exact censuses of genus-2 branched covers of an elliptic curve and the slope 5 + 6/d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the per-degree census table (counts, boundary degrees, slope).
    Counts(RunArgs),
    /// Verify the boundary-degree identity and the exact slope value.
    VerifySlope(RunArgs),
    /// Verify the arithmetic-function identity suite.
    VerifyIdentities(RunArgs),
    /// Compare the brute-force pair oracle against the recursion, and the
    /// explicit lattice enumerations against their closed forms.
    VerifyOracle(RunArgs),
    /// Verify the divisor-class slope relation symbolically and at fixed
    /// integer degrees.
    Picard(RunArgs),
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Largest degree d in the sweep.
    #[arg(long = "max-d", default_value_t = 100)]
    max_d: u64,

    /// Bound for the quadratic brute-force oracle (default 200, capped by
    /// --max-d).
    #[arg(long = "oracle-max-d")]
    oracle_max_d: Option<u64>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads for per-degree sweeps (default: available
    /// parallelism).
    #[arg(long)]
    workers: Option<usize>,

    /// Perturb one value before verifying, to exercise failure paths:
    /// `b:<d>` (bump B_d by one) or `delta-eps2` (bump a delta
    /// coefficient).
    #[arg(long = "inject-fault")]
    inject_fault: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Csv,
    Json,
}

/// A perturbation applied before verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fault {
    /// Add one to the solved B at this degree.
    BumpB(u64),
    /// Add one to the eps2 coefficient of delta.
    BumpDeltaEps2,
}

fn parse_fault(spec: &str) -> Result<Fault, String> {
    if spec == "delta-eps2" {
        return Ok(Fault::BumpDeltaEps2);
    }
    if let Some(d) = spec.strip_prefix("b:") {
        let d: u64 = d
            .parse()
            .map_err(|_| format!("invalid degree in fault spec '{spec}'"))?;
        return Ok(Fault::BumpB(d));
    }
    Err(format!(
        "unknown fault '{spec}'; expected 'b:<d>' or 'delta-eps2'"
    ))
}

/// Validated run configuration shared by all commands.
struct RunConfig {
    max_d: u64,
    oracle_max_d: u64,
    format: Format,
    out: Option<PathBuf>,
    workers: usize,
    fault: Option<Fault>,
}

fn validate(args: &RunArgs, command: &Command) -> Result<RunConfig, String> {
    if args.max_d < 2 {
        return Err(format!("--max-d must be at least 2, got {}", args.max_d));
    }
    let oracle_max_d = match args.oracle_max_d {
        None => args.max_d.min(200),
        Some(x) => {
            if x < 2 {
                return Err(format!("--oracle-max-d must be at least 2, got {x}"));
            }
            if x > args.max_d {
                return Err(format!(
                    "--oracle-max-d ({x}) must not exceed --max-d ({})",
                    args.max_d
                ));
            }
            x
        }
    };
    if args.workers == Some(0) {
        return Err("--workers must be at least 1".to_string());
    }
    let fault = match &args.inject_fault {
        None => None,
        Some(spec) => {
            let fault = parse_fault(spec)?;
            match (&fault, command) {
                (Fault::BumpB(d), Command::VerifySlope(_)) if (2..=args.max_d).contains(d) => {}
                (Fault::BumpB(d), Command::VerifyOracle(_)) if (2..=oracle_max_d).contains(d) => {}
                (Fault::BumpB(d), Command::VerifySlope(_) | Command::VerifyOracle(_)) => {
                    return Err(format!("fault degree {d} is outside the verified range"));
                }
                (Fault::BumpDeltaEps2, Command::Picard(_)) => {}
                _ => {
                    return Err(format!("fault '{spec}' does not apply to this command"));
                }
            }
            Some(fault)
        }
    };
    Ok(RunConfig {
        max_d: args.max_d,
        oracle_max_d,
        format: args.format,
        out: args.out.clone(),
        workers: args.workers.unwrap_or(0),
        fault,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let args = match &cli.command {
        Command::Counts(a)
        | Command::VerifySlope(a)
        | Command::VerifyIdentities(a)
        | Command::VerifyOracle(a)
        | Command::Picard(a) => a.clone(),
    };
    let config = match validate(&args, &cli.command) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build worker pool: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };

    let outcome = pool.install(|| match cli.command {
        Command::Counts(_) => commands::counts(&config),
        Command::VerifySlope(_) => commands::verify_slope(&config),
        Command::VerifyIdentities(_) => commands::verify_identities(&config),
        Command::VerifyOracle(_) => commands::verify_oracle(&config),
        Command::Picard(_) => commands::picard(&config),
    });

    match output::write(&config.out, &outcome.rendered) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    }
    if outcome.all_passed {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    }
}
