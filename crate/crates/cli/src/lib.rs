//! Argument parsing and dispatch for the `qsearch` binary.

pub mod commands;
pub mod record;
pub mod sweep;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsearch::SiteModel;

use crate::commands::{AssembleParams, DecohereParams, GroverParams, SolveParams};
use crate::record::{render_many, render_single, Format};
use crate::sweep::{run_sweep, Axis, FixedParams, SweepGrid, SweepTarget};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or out-of-domain values.
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // diagnostics are always a single line
        let msg = match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        };
        f.write_str(&msg.replace('\n', " "))
    }
}

impl std::error::Error for CliError {}

impl From<qsearch::Error> for CliError {
    fn from(e: qsearch::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsearch",
    version,
    about = "Grover search, query optimality and assembly simulation"
)]
pub struct Cli {
    /// Output format (default: json, or csv for `sweep`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for stochastic commands; drawn at random and echoed when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal database size for Q queries, with the Boolean 2^Q baseline.
    Solve {
        #[arg(long)]
        q: u32,
    },
    /// Run the state-vector search.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Index of the marked item.
        #[arg(long, default_value_t = 0)]
        target: usize,
        /// Include the full amplitude vector.
        #[arg(long)]
        emit_state: bool,
    },
    /// Search success under per-iteration dephasing.
    Decohere {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Monte Carlo chain assembly.
    Assemble {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u32,
        /// Sites per chain.
        #[arg(long)]
        length: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = SiteModelArg::ClosedForm)]
        site_model: SiteModelArg,
    },
    /// Sweep one parameter of another command; one row per grid point.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SiteModelArg {
    ClosedForm,
    StateVector,
}

impl From<SiteModelArg> for SiteModel {
    fn from(a: SiteModelArg) -> Self {
        match a {
            SiteModelArg::ClosedForm => SiteModel::ClosedForm,
            SiteModelArg::StateVector => SiteModel::StateVector,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Command evaluated at each grid point.
    #[arg(value_enum)]
    pub command: SweepTarget,
    #[arg(long, value_enum)]
    pub axis: Axis,
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub length: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub target: usize,
    #[arg(long, value_enum, default_value_t = SiteModelArg::ClosedForm)]
    pub site_model: SiteModelArg,
}

/// Executes a parsed command line and returns the full rendered output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let seed = cli.seed.unwrap_or_else(rand::random);
    match &cli.command {
        Command::Sweep(s) => {
            let grid = SweepGrid {
                axis: s.axis,
                start: s.start,
                stop: s.stop,
                step: s.step,
            };
            let fixed = FixedParams {
                database_size: s.n,
                queries: s.q,
                dephasing_rate: s.gamma,
                chain_length: s.length,
                trials: s.trials,
                target_index: s.target,
                seed,
                site_model: s.site_model.into(),
            };
            let records = run_sweep(s.command, &grid, &fixed)?;
            render_many(&records, cli.format.unwrap_or(Format::Csv))
        }
        single => {
            let record = match *single {
                Command::Solve { q } => commands::solve(&SolveParams { queries: q })?,
                Command::Grover {
                    n,
                    q,
                    target,
                    emit_state,
                } => commands::grover(&GroverParams {
                    database_size: n,
                    queries: q,
                    target,
                    emit_state,
                })?,
                Command::Decohere { n, q, gamma } => commands::decohere(&DecohereParams {
                    database_size: n,
                    queries: q,
                    dephasing_rate: gamma,
                })?,
                Command::Assemble {
                    n,
                    q,
                    length,
                    trials,
                    site_model,
                } => commands::assemble(&AssembleParams {
                    alphabet_size: n,
                    queries: q,
                    chain_length: length,
                    trials,
                    seed,
                    site_model: site_model.into(),
                })?,
                Command::Sweep(_) => unreachable!("handled above"),
            };
            render_single(&record, cli.format.unwrap_or(Format::Json))
        }
    }
}
