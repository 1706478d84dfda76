//! Command-line front end.
//!
//! Every subcommand writes one table (CSV by default, JSON with `--json`
//! or `--format json`) to standard output or to `--out FILE`, byte for
//! byte the same either way. `verify` re-derives all the constants and
//! exits non-zero if any check fails.
//!
//! Exit statuses: 0 success, 1 domain error, 2 usage error, 3 verification
//! failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cascade::{self, CascadeError};
use crate::potential::{PotentialError, PotentialSpec};
use crate::profile::{self, fmt_f64, OutputFormat, ProfileError};
use crate::recursion::{self, RecursionError, StepMode};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Recursion(#[from] RecursionError),
    #[error(transparent)]
    Cascade(#[from] CascadeError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "ljcascade",
    version,
    about = "Self-similar Lennard-Jones fixed-point analysis and cluster-cascade toolkit"
)]
pub struct Cli {
    /// First-order cluster diameter
    #[arg(long, global = true, default_value_t = 1.0)]
    pub sigma1: f64,

    /// First-order well depth
    #[arg(long, global = true, default_value_t = 1.0)]
    pub eps1: f64,

    /// Output encoding
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Shorthand for --format json
    #[arg(long, global = true, conflicts_with = "format")]
    pub json: bool,

    /// Write the output to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    /// The curve family with its lower envelope
    Family,
    /// The parabola and tent path around the bifurcation interval
    Recursion,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-derive every fixed-point constant and report pass/fail
    Verify,
    /// Build the self-similar cascade levels
    Cascade {
        /// Number of orders to build
        #[arg(long, default_value_t = 8)]
        orders: usize,
    },
    /// Solve the two crossing radii at a potential level
    Crossings {
        /// Signed level in (-eps1, 0)
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "depth",
            conflicts_with = "depth"
        )]
        uc: Option<f64>,
        /// Positive depth below zero; equivalent to --uc with the sign flipped
        #[arg(long)]
        depth: Option<f64>,
    },
    /// Iterate the fluctuation recursion from an initial disturbance
    Recur {
        /// Base chi the fluctuation is taken about
        #[arg(long, allow_hyphen_values = true)]
        chi: f64,
        /// Initial disturbance
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        /// Number of iterations
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Use the linearized step instead of the exact one
        #[arg(long)]
        linearized: bool,
    },
    /// Classify the recursion stability at a given chi
    Stability {
        #[arg(long, allow_hyphen_values = true)]
        chi: f64,
    },
    /// Emit figure-ready tables
    Profile {
        /// Number of cascade orders in the family
        #[arg(long, default_value_t = 8)]
        orders: usize,
        /// Which figure data to emit
        #[arg(long, value_enum, default_value_t = FigureArg::Family)]
        figure: FigureArg,
        /// Grid start (family; defaults to 0.95 sigma1)
        #[arg(long)]
        q_min: Option<f64>,
        /// Grid end (family; defaults to 1.05 q_{M,R})
        #[arg(long)]
        q_max: Option<f64>,
        /// Number of grid samples
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Half-width extension beyond the bifurcation interval (recursion figure)
        #[arg(long, default_value_t = 0.0625)]
        delta0: f64,
    },
    /// Emit the delocalization path anchors
    Path {
        /// Number of cascade orders
        #[arg(long, default_value_t = 8)]
        orders: usize,
    },
    /// Emit the energy constants scaled by eps1
    Ledger,
}

/// A rendered table plus the exit status it determined.
#[derive(Debug)]
pub struct CommandOutput {
    pub text: String,
    pub exit: i32,
}

/// Parses `argv`, dispatches, writes output, returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => match emit(&cli, &output.text) {
            Ok(()) => output.exit,
            Err(err) => {
                eprintln!("error: {err}");
                EXIT_DOMAIN_ERROR
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_DOMAIN_ERROR
        }
    }
}

/// Runs one parsed command and renders its output.
pub fn execute(cli: &Cli) -> Result<CommandOutput, CliError> {
    let format = if cli.json {
        OutputFormat::Json
    } else {
        match cli.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    };

    let text = match &cli.command {
        Command::Verify => {
            let checks = verify::run_checks();
            let text = match format {
                OutputFormat::Csv => verify::render_table(&checks),
                OutputFormat::Json => verify::render_json(&checks),
            };
            let exit = if verify::all_passed(&checks) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            return Ok(CommandOutput { text, exit });
        }
        Command::Cascade { orders } => {
            let levels = cascade::build(cli.sigma1, cli.eps1, *orders)?;
            profile::serialize_cascade(&levels, format)?
        }
        Command::Crossings { uc, depth } => {
            let u_c = match (uc, depth) {
                (Some(u), None) => *u,
                (None, Some(d)) => -d,
                _ => unreachable!("clap enforces exactly one of --uc/--depth"),
            };
            let spec = PotentialSpec::new(cli.sigma1, cli.eps1)?;
            let pair = spec.crossings(u_c)?;
            match format {
                OutputFormat::Csv => format!(
                    "u_c,q_left,q_right\n{},{},{}\n",
                    fmt_f64(pair.u_c),
                    fmt_f64(pair.q_left),
                    fmt_f64(pair.q_right)
                ),
                OutputFormat::Json => format!(
                    "{{\"u_c\":{},\"q_left\":{},\"q_right\":{}}}\n",
                    fmt_f64(pair.u_c),
                    fmt_f64(pair.q_left),
                    fmt_f64(pair.q_right)
                ),
            }
        }
        Command::Recur {
            chi,
            delta,
            steps,
            linearized,
        } => {
            let mode = if *linearized {
                StepMode::Linearized
            } else {
                StepMode::Exact
            };
            let traj = recursion::iterate(*chi, *delta, *steps, mode)?;
            match format {
                OutputFormat::Csv => {
                    let mut out = String::from("index,delta,f_value\n");
                    for step in &traj.steps {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            step.index,
                            fmt_f64(step.delta),
                            fmt_f64(step.f_value)
                        ));
                    }
                    out
                }
                OutputFormat::Json => {
                    let steps: Vec<String> = traj
                        .steps
                        .iter()
                        .map(|s| {
                            format!(
                                "    {{\"index\":{},\"delta\":{},\"f_value\":{}}}",
                                s.index,
                                fmt_f64(s.delta),
                                fmt_f64(s.f_value)
                            )
                        })
                        .collect();
                    format!(
                        "{{\"mode\":\"{}\",\"base_chi\":{},\"terminated_by\":\"{}\",\"steps\":[\n{}\n]}}\n",
                        traj.mode,
                        fmt_f64(traj.base_chi),
                        traj.terminated_by,
                        steps.join(",\n")
                    )
                }
            }
        }
        Command::Stability { chi } => {
            let report = recursion::stability_at(*chi);
            match format {
                OutputFormat::Csv => format!(
                    "chi,slope,s,classification\n{},{},{},{}\n",
                    fmt_f64(report.chi),
                    fmt_f64(report.slope),
                    fmt_f64(report.s),
                    report.classification
                ),
                OutputFormat::Json => format!(
                    "{{\"chi\":{},\"slope\":{},\"s\":{},\"classification\":\"{}\"}}\n",
                    fmt_f64(report.chi),
                    fmt_f64(report.slope),
                    fmt_f64(report.s),
                    report.classification
                ),
            }
        }
        Command::Profile {
            orders,
            figure,
            q_min,
            q_max,
            samples,
            delta0,
        } => match figure {
            FigureArg::Family => {
                let levels = cascade::build(cli.sigma1, cli.eps1, *orders)?;
                let q_lo = q_min.unwrap_or(0.95 * cli.sigma1);
                let q_hi =
                    q_max.unwrap_or_else(|| 1.05 * levels.last().expect("non-empty").q_right);
                let rows = profile::sample_family(&levels, cli.eps1, q_lo, q_hi, *samples)?;
                profile::serialize_family(&rows, format)?
            }
            FigureArg::Recursion => {
                let rows = profile::recursion_figure(*delta0, *samples)?;
                profile::serialize_recursion(&rows, format)?
            }
        },
        Command::Path { orders } => {
            let levels = cascade::build(cli.sigma1, cli.eps1, *orders)?;
            let points = profile::delocalization_path(&levels, cli.eps1);
            profile::serialize_path(&points, format)?
        }
        Command::Ledger => {
            let ledger = cascade::energy_ledger(cli.eps1);
            match format {
                OutputFormat::Csv => format!(
                    "u_c_star,qiee,deep_attractive,e_c,k_t_c\n{},{},{},{},{}\n",
                    fmt_f64(ledger.u_c_star),
                    fmt_f64(ledger.qiee),
                    fmt_f64(ledger.deep_attractive),
                    fmt_f64(ledger.e_c),
                    fmt_f64(ledger.k_t_c)
                ),
                OutputFormat::Json => format!(
                    "{{\"u_c_star\":{},\"qiee\":{},\"deep_attractive\":{},\"e_c\":{},\"k_t_c\":{}}}\n",
                    fmt_f64(ledger.u_c_star),
                    fmt_f64(ledger.qiee),
                    fmt_f64(ledger.deep_attractive),
                    fmt_f64(ledger.e_c),
                    fmt_f64(ledger.k_t_c)
                ),
            }
        }
    };
    Ok(CommandOutput {
        text,
        exit: EXIT_OK,
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".to_string(),
                    source,
                })
        }
    }
}
