//! One-axis parameter sweeps over a subcommand.

use qsearch::SiteModel;
use rayon::prelude::*;

use crate::commands::{self, AssembleParams, DecohereParams, GroverParams, SolveParams};
use crate::record::{sig12, OutputRecord};
use crate::CliError;

/// Grid values closer than this to an integer count as that integer.
const INTEGER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepTarget {
    Solve,
    Grover,
    Decohere,
    Assemble,
}

impl SweepTarget {
    fn name(self) -> &'static str {
        match self {
            SweepTarget::Solve => "solve",
            SweepTarget::Grover => "grover",
            SweepTarget::Decohere => "decohere",
            SweepTarget::Assemble => "assemble",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Axis {
    #[value(name = "database_size", alias = "n")]
    DatabaseSize,
    #[value(name = "queries", alias = "q")]
    Queries,
    #[value(name = "dephasing_rate", alias = "gamma")]
    DephasingRate,
    #[value(name = "chain_length", alias = "length")]
    ChainLength,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::DatabaseSize => "database_size",
            Axis::Queries => "queries",
            Axis::DephasingRate => "dephasing_rate",
            Axis::ChainLength => "chain_length",
        }
    }

    fn applies_to(self, target: SweepTarget) -> bool {
        use Axis::*;
        match target {
            SweepTarget::Solve => self == Queries,
            SweepTarget::Grover => matches!(self, DatabaseSize | Queries),
            SweepTarget::Decohere => matches!(self, DatabaseSize | Queries | DephasingRate),
            SweepTarget::Assemble => matches!(self, DatabaseSize | Queries | ChainLength),
        }
    }
}

/// `start, start+step, …, ≤ stop` along one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepGrid {
    /// Grid points, each computed as `start + i·step` and rounded to 12
    /// significant digits so the echoed value reproduces the cell.
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let SweepGrid {
            start, stop, step, ..
        } = *self;
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(CliError::Usage("sweep bounds must be finite".into()));
        }
        if step <= 0.0 {
            return Err(CliError::Usage(format!(
                "sweep step must be > 0, got {step}"
            )));
        }
        if start > stop {
            return Err(CliError::Usage(format!(
                "empty sweep: start {start} > stop {stop}"
            )));
        }
        let count = ((stop - start) / step + INTEGER_SLACK).floor() as u64 + 1;
        if count > 1_000_000 {
            return Err(CliError::Usage(format!(
                "sweep has {count} cells, limit is 1000000"
            )));
        }
        Ok((0..count).map(|i| sig12(start + i as f64 * step)).collect())
    }
}

/// Values for every parameter a target may need; the swept axis overrides one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub database_size: Option<f64>,
    pub queries: Option<u32>,
    pub dephasing_rate: Option<f64>,
    pub chain_length: Option<u64>,
    pub trials: u64,
    pub target_index: usize,
    pub seed: u64,
    pub site_model: SiteModel,
}

fn as_integer(axis: Axis, v: f64) -> Result<u64, CliError> {
    let r = v.round();
    if (v - r).abs() > INTEGER_SLACK || r < 0.0 || r > u32::MAX as f64 {
        return Err(CliError::Usage(format!(
            "{} takes non-negative integer values, grid produced {v}",
            axis.name()
        )));
    }
    Ok(r as u64)
}

fn require<T>(value: Option<T>, flag: &str, target: SweepTarget) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("sweep {} needs {flag}", target.name())))
}

enum Cell {
    Solve(SolveParams),
    Grover(GroverParams),
    Decohere(DecohereParams),
    Assemble(AssembleParams),
}

impl Cell {
    fn run(&self) -> Result<OutputRecord, CliError> {
        match self {
            Cell::Solve(p) => commands::solve(p),
            Cell::Grover(p) => commands::grover(p),
            Cell::Decohere(p) => commands::decohere(p),
            Cell::Assemble(p) => commands::assemble(p),
        }
    }
}

fn build_cell(
    target: SweepTarget,
    grid: &SweepGrid,
    fixed: &FixedParams,
    value: f64,
) -> Result<Cell, CliError> {
    let mut f = *fixed;
    match grid.axis {
        Axis::DatabaseSize => f.database_size = Some(value),
        Axis::Queries => f.queries = Some(as_integer(grid.axis, value)? as u32),
        Axis::DephasingRate => f.dephasing_rate = Some(value),
        Axis::ChainLength => f.chain_length = Some(as_integer(grid.axis, value)?),
    }
    let int_size = |f: &FixedParams| -> Result<u64, CliError> {
        as_integer(Axis::DatabaseSize, require(f.database_size, "--n", target)?)
    };
    Ok(match target {
        SweepTarget::Solve => Cell::Solve(SolveParams {
            queries: require(f.queries, "--q", target)?,
        }),
        SweepTarget::Grover => Cell::Grover(GroverParams {
            database_size: int_size(&f)? as usize,
            queries: require(f.queries, "--q", target)?,
            target: f.target_index,
            emit_state: false,
        }),
        SweepTarget::Decohere => Cell::Decohere(DecohereParams {
            database_size: int_size(&f)?,
            queries: require(f.queries, "--q", target)?,
            dephasing_rate: require(f.dephasing_rate, "--gamma", target)?,
        }),
        SweepTarget::Assemble => Cell::Assemble(AssembleParams {
            alphabet_size: int_size(&f)?,
            queries: require(f.queries, "--q", target)?,
            chain_length: require(f.chain_length, "--length", target)?,
            trials: f.trials,
            seed: f.seed,
            site_model: f.site_model,
        }),
    })
}

/// Runs every grid cell (in parallel) and returns the records in grid order.
///
/// A failing cell fails the whole sweep; no partial result is returned.
pub fn run_sweep(
    target: SweepTarget,
    grid: &SweepGrid,
    fixed: &FixedParams,
) -> Result<Vec<OutputRecord>, CliError> {
    if !grid.axis.applies_to(target) {
        return Err(CliError::Usage(format!(
            "axis {} does not apply to {}",
            grid.axis.name(),
            target.name()
        )));
    }
    let cells = grid
        .values()?
        .into_iter()
        .map(|v| build_cell(target, grid, fixed, v))
        .collect::<Result<Vec<_>, _>>()?;
    cells.par_iter().map(Cell::run).collect()
}
