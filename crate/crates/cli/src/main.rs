//! Batch driver exposing the verification suites as subcommands with JSON
//! reports and seeded reproducibility.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails (the
//! report is still written), 2 for configuration errors.

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use dahacm::degen::Flavor;
use dahacm::exact::Rat;
use dahacm::report::{report_schema_validate, Report};
use dahacm::suites;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "dahacm",
    about = "Exact verification suites for double affine Hecke algebra representations and Calogero-Moser matrix pairs",
    version
)]
struct Cli {
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Degree of the symmetric group (matrix size is n factorial).
    #[arg(long)]
    n: usize,
    /// Deformation parameter as a rational "p/q" or "p".
    #[arg(long, default_value = "2", value_parser = parse_rat)]
    tau: Rat,
    /// Root seed; trial k draws from stream k of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independent trials.
    #[arg(long, default_value_t = 5)]
    trials: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every defining relation of the algebra on sampled modules.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Replace T_1 by the identity before checking; forces failures.
        #[arg(long, default_value_t = false)]
        perturb: bool,
    },
    /// Restrict to the invariant subspace and check the point certificate.
    CmMap {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Commutator identity and the spectrum of the central T-product.
    ZSpec {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Chart round trip: coordinates -> point -> conjugate -> coordinates.
    Chart {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Jordan-stratum dimension formulas against brute force, exhaustively.
    Jordan {
        /// Largest total stratum size to enumerate.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value = "2", value_parser = parse_rat)]
        tau: Rat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Chain-rule Poisson brackets against the closed form at random points.
    Poisson {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Degenerate (Dunkl-operator) relation sweep over a monomial window.
    Dunkl {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", value_parser = parse_rat)]
        t: Rat,
        #[arg(long, default_value = "1", value_parser = parse_rat)]
        c: Rat,
        /// rational | trigonometric
        #[arg(long, default_value = "rational", value_parser = parse_flavor)]
        flavor: Flavor,
        #[arg(long, default_value_t = 5)]
        degree_bound: i64,
    },
    /// Bispectral dual module of the trigonometric algebra at t = 0.
    DualTrig {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", value_parser = parse_rat)]
        c: Rat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
    /// Sigma- and epsilon-twisted bundles and the point-level involution.
    Twist {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Validate a report file against the JSON schema.
    ValidateReport {
        path: PathBuf,
    },
}

fn parse_rat(text: &str) -> Result<Rat, String> {
    Rat::from_str(text).map_err(|e| e.to_string())
}

fn parse_flavor(text: &str) -> Result<Flavor, String> {
    match text {
        "rational" => Ok(Flavor::Rational),
        "trigonometric" | "trig" => Ok(Flavor::Trigonometric),
        other => Err(format!(
            "unknown flavor `{other}`; expected rational or trigonometric"
        )),
    }
}

/// Configuration errors exit with status 2; clap's own parse errors already
/// do.
fn config_error(message: String) -> ExitCode {
    eprintln!("configuration error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command) {
        Ok(report) => report,
        Err(message) => return config_error(message),
    };
    let rendered = report.to_json_string();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered)
                .with_context(|| format!("writing report to {}", path.display()))
            {
                return config_error(e.to_string());
            }
        }
        None => print!("{rendered}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Report, String> {
    match command {
        Command::Verify { common, perturb } => {
            suites::relation_suite(common.n, &common.tau, common.seed, common.trials, *perturb)
                .map_err(|e| e.to_string())
        }
        Command::CmMap { common } => {
            suites::cm_map_suite(common.n, &common.tau, common.seed, common.trials)
                .map_err(|e| e.to_string())
        }
        Command::ZSpec { common } => {
            suites::z_spectrum_suite(common.n, &common.tau, common.seed, common.trials)
                .map_err(|e| e.to_string())
        }
        Command::Chart { common } => {
            suites::chart_suite(common.n, &common.tau, common.seed, common.trials)
        }
        Command::Jordan {
            max_size,
            tau,
            seed,
        } => suites::jordan_suite(*max_size, tau, *seed),
        Command::Poisson { common } => {
            suites::poisson_suite(common.n, &common.tau, common.seed, common.trials)
        }
        Command::Dunkl {
            n,
            t,
            c,
            flavor,
            degree_bound,
        } => {
            if *degree_bound < 1 {
                return Err("degree bound must be at least 1".into());
            }
            if *n < 2 || *n > 6 {
                return Err("dunkl sweep supports 2 <= n <= 6".into());
            }
            Ok(suites::dunkl_suite(*n, t, c, *flavor, *degree_bound))
        }
        Command::DualTrig { n, c, seed, trials } => {
            suites::dual_trig_suite(*n, c, *seed, *trials)
        }
        Command::Twist { common } => {
            suites::twist_suite(common.n, &common.tau, common.seed, common.trials)
                .map_err(|e| e.to_string())
        }
        Command::ValidateReport { path } => {
            let valid = report_schema_validate(path);
            let check = if valid {
                dahacm::report::Check::passing("report-schema", vec![])
            } else {
                dahacm::report::Check::failing(
                    "report-schema",
                    vec![],
                    serde_json::json!({"path": path.display().to_string()}),
                )
            };
            Ok(Report::new(
                "validate-report",
                serde_json::json!({"path": path.display().to_string()}),
                vec![check],
            ))
        }
    }
}
