//! Flag definitions and validation into a [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use swcert_core::witness::BoundMode;

use crate::params::{Curve, Params, ScanSpec};
use crate::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(
    name = "swcert",
    version,
    about = "Schmidt-number certification from correlations in measurement bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Tight,
    Loose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasesFamily {
    ThreeMubs,
    Amub,
    Tilted,
    Random,
    Ivonovic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateFamily {
    Isotropic,
    Thermal,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Certify a Schmidt-number lower bound from a state or from counts.
    Certify {
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        bases: PathBuf,
        #[arg(long)]
        counts: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tight")]
        mode: Mode,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a family of measurement bases.
    GenBases {
        #[arg(long, value_enum)]
        family: BasesFamily,
        #[arg(long)]
        dim: usize,
        /// Modulus of the three-basis construction.
        #[arg(long)]
        pr: Option<u64>,
        /// Effective modulus of the approximately unbiased family.
        #[arg(long)]
        p_eff: Option<f64>,
        /// Number of bases for the random and tilted families.
        #[arg(long)]
        count: Option<usize>,
        /// Schmidt vector for the tilted family, comma separated.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        /// Phase drift applied to row `alpha` of the quadratic basis.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a benchmark density matrix.
    GenState {
        #[arg(long, value_enum)]
        family: StateFamily,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a threshold or tolerance curve as CSV.
    Scan {
        #[arg(long, value_enum)]
        curve: Curve,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the fidelity-based baseline with this witness on one state.
    Compare {
        #[arg(long)]
        state: PathBuf,
        #[arg(long = "M")]
        m: usize,
        /// Bases for the witness; complete or three-basis MUBs by default.
        #[arg(long)]
        bases: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in consistency checks.
    Check {
        /// Adds random basis sets to the operator check.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    State(PathBuf),
    Counts(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasesSpec {
    pub family: BasesFamily,
    pub dim: usize,
    pub pr: Option<u64>,
    pub p_eff: Option<f64>,
    pub count: Option<usize>,
    pub lambda: Option<Vec<f64>>,
    pub theta: f64,
    pub alpha: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateSpec {
    pub family: StateFamily,
    pub dim: usize,
    pub p: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Certify {
        evidence: Evidence,
        bases: PathBuf,
        mode: BoundMode,
    },
    GenBases(BasesSpec),
    GenState(StateSpec),
    Scan(ScanSpec),
    Compare {
        state: PathBuf,
        m: usize,
        bases: Option<PathBuf>,
    },
    Check,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output_path: Option<PathBuf>,
    pub seed: Option<u64>,
}

fn check_dim(dim: usize) -> CliResult<()> {
    if dim < 2 {
        return Err(CliError::Usage(format!("--dim {dim} must be at least 2")));
    }
    Ok(())
}

fn check_p(p: f64) -> CliResult<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("--p {p} outside [0, 1]")));
    }
    Ok(())
}

/// Parses and validates a full argument vector, program name first.
pub fn parse_cli<I, T>(argv: I) -> CliResult<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let config = match cli.command {
        Sub::Certify {
            state,
            bases,
            counts,
            mode,
            report,
        } => {
            let evidence = match (state, counts) {
                (Some(s), None) => Evidence::State(s),
                (None, Some(c)) => Evidence::Counts(c),
                (None, None) => {
                    return Err(CliError::MissingRequired("--state or --counts".into()))
                }
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "give either --state or --counts, not both".into(),
                    ))
                }
            };
            let mode = match mode {
                Mode::Tight => BoundMode::Tight,
                Mode::Loose => BoundMode::Loose,
            };
            RunConfig {
                command: Command::Certify {
                    evidence,
                    bases,
                    mode,
                },
                output_path: report,
                seed: None,
            }
        }
        Sub::GenBases {
            family,
            dim,
            pr,
            p_eff,
            count,
            lambda,
            theta,
            alpha,
            seed,
            out,
        } => {
            check_dim(dim)?;
            match family {
                BasesFamily::ThreeMubs if pr.is_none() => {
                    return Err(CliError::MissingRequired("--pr".into()))
                }
                BasesFamily::Random if seed.is_none() => {
                    return Err(CliError::MissingRequired("--seed".into()))
                }
                _ => {}
            }
            if let Some(l) = &lambda {
                if l.len() != dim {
                    return Err(CliError::Usage(format!(
                        "--lambda has {} entries, --dim is {dim}",
                        l.len()
                    )));
                }
            }
            RunConfig {
                command: Command::GenBases(BasesSpec {
                    family,
                    dim,
                    pr,
                    p_eff,
                    count,
                    lambda,
                    theta,
                    alpha,
                }),
                output_path: out,
                seed,
            }
        }
        Sub::GenState {
            family,
            dim,
            p,
            beta,
            out,
        } => {
            check_dim(dim)?;
            check_p(p)?;
            let beta = match (family, beta) {
                (StateFamily::Thermal, None) => {
                    return Err(CliError::MissingRequired("--beta".into()))
                }
                (StateFamily::Thermal, Some(b)) if !(b.is_finite() && b >= 0.0) => {
                    return Err(CliError::Usage(format!(
                        "--beta {b} must be finite and nonnegative"
                    )))
                }
                (_, b) => b.unwrap_or(0.0),
            };
            RunConfig {
                command: Command::GenState(StateSpec {
                    family,
                    dim,
                    p,
                    beta,
                }),
                output_path: out,
                seed: None,
            }
        }
        Sub::Scan {
            curve,
            params,
            seed,
            out,
        } => {
            let spec = ScanSpec::from_params(curve, &Params::parse(&params)?)?;
            if spec.is_stochastic() && seed.is_none() {
                return Err(CliError::MissingRequired("--seed".into()));
            }
            RunConfig {
                command: Command::Scan(spec),
                output_path: out,
                seed,
            }
        }
        Sub::Compare {
            state,
            m,
            bases,
            out,
        } => {
            if m == 0 {
                return Err(CliError::Usage("--M must be at least 1".into()));
            }
            RunConfig {
                command: Command::Compare { state, m, bases },
                output_path: out,
                seed: None,
            }
        }
        Sub::Check { seed } => RunConfig {
            command: Command::Check,
            output_path: None,
            seed,
        },
    };
    Ok(config)
}
