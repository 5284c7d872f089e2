use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

#[derive(Parser)]
#[command(
    name = "contest",
    version,
    about = "Equilibria of two-player logit contests over constrained effort sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the pure equilibria of a symmetric contest.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Payoff bimatrix and equilibrium analysis of a finite contest.
    Matrix {
        #[arg(long)]
        config: PathBuf,
        /// Discretize continuous segments of a shared choice set with this step.
        #[arg(long)]
        grid_step: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Threshold effort and case as the upper bracket element varies.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// First upper bracket value (default: the unconstrained equilibrium).
        #[arg(long)]
        from: Option<f64>,
        /// Last upper bracket value (default: v/2).
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Lower bracket element held fixed (default: from the choice set, else 0).
        #[arg(long)]
        e_low: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Check the symmetric payoff identity on random effort pairs.
    IdentityCheck {
        #[arg(long)]
        v: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw x = y in every sample.
        #[arg(long)]
        force_equal: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Verify the analytical equilibria against a brute-force grid game.
    Oracle {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        grid_step: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        /// Shift every predicted equilibrium by v/5 before verifying (or predict
        /// (v/5, v/5) when there is none).
        #[arg(long)]
        corrupt: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { config, out } => commands::solve(&config, &out),
        Command::Matrix { config, grid_step, out } => commands::matrix(&config, grid_step, &out),
        Command::Sweep {
            config,
            from,
            to,
            steps,
            e_low,
            out,
        } => commands::sweep(&config, from, to, steps, e_low, &out),
        Command::IdentityCheck {
            v,
            r,
            a,
            samples,
            seed,
            force_equal,
            out,
        } => commands::identity_check(v, r, a, samples, seed, force_equal, &out),
        Command::Oracle {
            config,
            grid_step,
            eps,
            corrupt,
            out,
        } => commands::oracle(&config, grid_step, eps, corrupt, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
