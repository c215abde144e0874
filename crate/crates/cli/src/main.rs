//! `seqlab`: command-line driver for the sequence-space laboratory.
//!
//! Exit codes: 0 when every check passes, 1 on a tolerance violation,
//! 2 on a parse or configuration error, 3 when a required optimization did
//! not converge.

mod commands;
mod inputs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use seqlab::OptimizerConfig;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(seqlab::Error),
    Output(String),
}

impl From<seqlab::Error> for CliError {
    fn from(e: seqlab::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Output(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// How a command finished when it did not error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok,
    Violation,
    Nonconverged,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Violation => 1,
            Outcome::Nonconverged => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "seqlab", version, about = "Norms, Hölder best constants and ideal norms on finite sequence spaces")]
pub struct Cli {
    /// Optimizer configuration (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub opt: Option<PathBuf>,
    /// Base seed; instance i of a sweep runs with seed + i.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "SEQLAB_THREADS")]
    pub threads: Option<usize>,
    /// Override of the command's default tolerance.
    #[arg(long, global = true, env = "SEQLAB_TOL")]
    pub tol: Option<f64>,
    /// Output file; `.csv` or `.json`. Tables go to stdout as CSV otherwise.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decreasing rearrangement of a vector.
    Rearrange {
        #[arg(long)]
        x: String,
    },
    /// Norm of a vector in a space.
    Norm {
        #[arg(long)]
        space: String,
        #[arg(long)]
        x: String,
    },
    /// Köthe-dual norm of a vector.
    Dualnorm {
        #[arg(long)]
        space: String,
        #[arg(long)]
        x: String,
    },
    /// Predicted vs computed best Hölder constants over a range of N.
    HolderVerify {
        #[arg(long)]
        space: String,
        /// ones | geometric(r) | harmonic | @file | a,b,...
        #[arg(long, default_value = "ones")]
        alpha: String,
        #[arg(long)]
        n: u32,
        /// 12 | 1..16 | 2^1..2^6 | comma-separated mix.
        #[arg(long = "N")]
        dims: String,
        /// Evaluate this case's formula instead of the selected one.
        #[arg(long)]
        force_case: Option<String>,
    },
    /// Closed-form extremal vector for dual Lorentz spaces with n' > p > 1.
    Extremizer {
        #[arg(long, default_value = "ones")]
        alpha: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        dim: usize,
    },
    /// Partial-sum inequality behind the p < n best constants.
    InductionCheck {
        /// Check this nonincreasing vector.
        #[arg(long, conflicts_with = "random")]
        x: Option<String>,
        /// Check this many random nonincreasing vectors instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        w: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long = "N")]
        dim: Option<usize>,
    },
    /// lambda(N) of l_n(ideal, E): the norm of the diagonal form with alpha = 1_N.
    Phi {
        /// L (all forms) or I (integral forms, N <= 6).
        #[arg(long, default_value = "L")]
        ideal: String,
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        dims: String,
    },
    /// Computed lambda(N) against the predicted diagonal ideal space.
    IdealTable {
        #[arg(long, default_value = "L")]
        ideal: String,
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        dims: String,
    },
    /// lambda_G(N) / lambda_F(N)^(1-eps) over a sweep.
    Growth {
        #[arg(long = "F")]
        f: String,
        #[arg(long = "G")]
        g: String,
        #[arg(long, default_value = "0.1,0.25")]
        eps: String,
        #[arg(long = "N", default_value = "2^1..2^14")]
        dims: String,
    },
    /// Regularity profile rho_r(k) of a weight.
    Regularity {
        #[arg(long)]
        w: String,
        /// One or more exponents, comma-separated.
        #[arg(long)]
        r: String,
        #[arg(long = "N")]
        dim: Option<usize>,
    },
}

impl Cli {
    pub fn config(&self) -> Result<OptimizerConfig, CliError> {
        let mut cfg = match &self.opt {
            Some(path) => OptimizerConfig::from_json_file(path)?,
            None => OptimizerConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(t) = cli.tol {
        if !(t >= 0.0 && t.is_finite()) {
            eprintln!("error: tolerance must be a nonnegative number, got {t}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
