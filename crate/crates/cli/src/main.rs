//! `zonal`: exact zonal polynomials and Monte Carlo checks of the diagonal,
//! sum-spectrum and HCIZ predictions, written as CSV.

mod commands;
mod output;

use std::fmt;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "zonal", version, about, propagate_version = true)]
struct Cli {
    /// Master seed for every Monte Carlo stream.
    #[arg(long, env = "ZONAL_SEED", default_value_t = 1, global = true)]
    seed: u64,

    /// Number of independent random streams. Output depends on it.
    #[arg(long, default_value_t = 8, global = true)]
    streams: usize,

    /// Write CSV here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monomial coefficients of the Jack polynomial J_λ.
    Zonal {
        /// Weakly decreasing parts, comma separated, e.g. 3,1,1.
        #[arg(long)]
        partition: String,
        /// Jack parameter as p/q; 2 gives zonal polynomials.
        #[arg(long, default_value = "2")]
        alpha: String,
        /// Keep only monomials in this many variables.
        #[arg(long)]
        variables: Option<usize>,
    },
    /// Zonal, empirical and Bernstein masses of the diagonal of o D_λ oᵀ.
    Density {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[arg(long, default_value_t = 30_000)]
        samples: usize,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Predicted and sampled spectrum of (o D_λ oᵀ + o' D_γ o'ᵀ) / 2.
    Sumspec {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        /// Second spectrum, same format as --lambda.
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 50_000)]
        samples: usize,
    },
    /// Convergence table for ∫ exp(tr(C o D_λ oᵀ)) do over O(n).
    Hciz {
        /// Spectrum λ as comma-separated rationals.
        #[arg(long)]
        lambda: String,
        /// Eigenvalues of C, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required_unless_present = "c_matrix"
        )]
        c: Vec<f64>,
        /// Symmetric C given by rows, e.g. "1,0.5;0.5,0".
        #[arg(long, conflicts_with = "c", allow_hyphen_values = true)]
        c_matrix: Option<String>,
        /// Grid values N, comma separated. Defaults to a doubling sequence.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<usize>,
        /// Length of the default doubling sequence.
        #[arg(long, default_value_t = 4)]
        doublings: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Data sets behind the diagonal, one-row coefficient and arcsine plots.
    Figures {
        #[arg(long)]
        fig: Figure,
        #[arg(long, default_value_t = 30_000)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Spectrum as comma-separated rationals summing to 1, e.g. 2/3,1/3,0.
    #[arg(long)]
    pub lambda: String,
    /// Lattice resolution N; N·λ must be integral.
    #[arg(long)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Sample from the determinant-one subgroup.
    #[arg(long)]
    pub special: bool,
    /// Conjugate by unitary instead of orthogonal matrices.
    #[arg(long)]
    pub unitary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// SO(3) diagonal scatter for diag(2,1,0)/3.
    #[value(name = "1a")]
    DiagonalSo3,
    /// SU(3) diagonal scatter for diag(2,1,0)/3.
    #[value(name = "1b")]
    DiagonalSu3,
    /// SO(3) diagonal scatter for the rank-one diag(1,0,0).
    #[value(name = "2a")]
    RankOneSo3,
    /// Two-variable coefficients of the zonal polynomial of (40).
    #[value(name = "2b")]
    OneRow40,
    /// Coefficients of (50) against the arcsine curve.
    #[value(name = "3")]
    Arcsine50,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(zonal_core::Error),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_input_error() => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<zonal_core::Error> for CliError {
    fn from(e: zonal_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if cli.streams == 0 {
        return Err(CliError::Input("--streams must be at least 1".into()));
    }
    let mut report = output::Report::default();
    report.comment(format_args!("zonal {}", env!("CARGO_PKG_VERSION")))?;
    report.comment(format_args!("seed {} streams {}", cli.seed, cli.streams))?;
    report.comment(format_args!("config {:?}", cli.command))?;
    commands::run(&cli.command, cli.seed, cli.streams, &mut report)?;
    report.finish(cli.output.as_deref())?;
    Ok(())
}
