//! Query-count optimality for single-target search.
//!
//! `Q` iterations over `N` items hit the target with certainty when
//! `(2Q+1)·asin(1/√N) = π/2`. Everything here is closed form; the relation
//! inverts analytically in both directions.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Slack used when snapping a real capacity to neighbouring integers.
const SNAP_SLACK: f64 = 1e-9;

fn check_size(database_size: f64) -> Result<()> {
    if !database_size.is_finite() || database_size < 2.0 {
        return Err(Error::Domain(format!(
            "database size must be a finite number >= 2, got {database_size}"
        )));
    }
    Ok(())
}

/// Rotation angle `θ = asin(1/√N)` of a single iteration (the state moves by `2θ`).
pub fn grover_angle(database_size: f64) -> Result<f64> {
    check_size(database_size)?;
    Ok((1.0 / database_size.sqrt()).asin())
}

/// Database size that `queries` iterations search without error:
/// `1 / sin²(π / (2(2Q+1)))`.
pub fn optimal_database_size(queries: u32) -> Result<f64> {
    if queries < 1 {
        return Err(Error::Domain("queries must be >= 1".into()));
    }
    let s = (FRAC_PI_2 / f64::from(2 * queries + 1)).sin();
    Ok(1.0 / (s * s))
}

/// Fewest queries (at least one) that reach the highest attainable success
/// probability for `database_size` items.
///
/// This is the `Q` bringing `(2Q+1)·θ` closest to `π/2`, so `N = 21` needs 3
/// queries even though `7θ` falls just short of `π/2`. Ties round up, which
/// gives `Q = 1` for `N = 2`.
pub fn minimal_queries(database_size: f64) -> Result<u32> {
    let theta = grover_angle(database_size)?;
    let q = ((FRAC_PI_2 / theta - 1.0) / 2.0).round();
    Ok(q.max(1.0) as u32)
}

/// Probability that `queries` iterations over `database_size` items select a
/// wrong item: `1 − sin²((2Q+1)θ)`, clamped to `[0, 1]`.
pub fn residual_error(database_size: f64, queries: u32) -> Result<f64> {
    let theta = grover_angle(database_size)?;
    let s = (f64::from(2 * queries + 1) * theta).sin();
    Ok((1.0 - s * s).clamp(0.0, 1.0))
}

/// Number of items `Q` classical yes/no queries can tell apart: `2^Q`.
pub fn boolean_capacity(queries: u32) -> Result<u64> {
    1u64.checked_shl(queries)
        .filter(|_| queries < u64::BITS)
        .ok_or_else(|| Error::Range(format!("2^{queries} does not fit in 64 bits")))
}

/// Success probability of a classical searcher that checks `queries`
/// distinct items one by one and then guesses among the rest: `(Q+1)/N`.
pub fn classical_guess_success(database_size: u64, queries: u64) -> Result<f64> {
    if database_size < 2 {
        return Err(Error::Domain(format!(
            "database size must be >= 2, got {database_size}"
        )));
    }
    if queries >= database_size {
        return Ok(1.0);
    }
    Ok((queries + 1) as f64 / database_size as f64)
}

/// `N`, `Q`, the iteration angle and the residual error, bundled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QueryPlan {
    pub database_size: f64,
    pub queries: u32,
    pub angle: f64,
    pub residual_error: f64,
}

impl QueryPlan {
    pub fn new(database_size: f64, queries: u32) -> Result<Self> {
        Ok(Self {
            database_size,
            queries,
            angle: grover_angle(database_size)?,
            residual_error: residual_error(database_size, queries)?,
        })
    }

    /// The plan using [`minimal_queries`] for `database_size`.
    pub fn minimal(database_size: f64) -> Result<Self> {
        Self::new(database_size, minimal_queries(database_size)?)
    }

    /// `(2Q+1)·θ − π/2`; zero for an exact solution.
    pub fn angle_excess(&self) -> f64 {
        f64::from(2 * self.queries + 1) * self.angle - FRAC_PI_2
    }
}

/// Integer neighbours of a real capacity, with near-integers snapped.
///
/// `4 − 1ulp` yields `(4, 4)` rather than `(3, 4)`. The floor never drops
/// below 2.
pub fn integer_bracket(capacity: f64) -> (u64, u64) {
    let floor = (capacity + SNAP_SLACK).floor().max(2.0) as u64;
    let ceil = (capacity - SNAP_SLACK).ceil().max(2.0) as u64;
    (floor, ceil)
}

/// One line of the quantum vs. Boolean capacity comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub queries: u32,
    pub quantum_capacity: f64,
    pub boolean_capacity: u64,
    pub floor_size: u64,
    pub ceiling_size: u64,
    pub residual_error_at_floor: f64,
    pub residual_error_at_ceiling: f64,
}

impl ComparisonRow {
    pub fn for_queries(queries: u32) -> Result<Self> {
        let quantum_capacity = optimal_database_size(queries)?;
        let (floor_size, ceiling_size) = integer_bracket(quantum_capacity);
        Ok(Self {
            queries,
            quantum_capacity,
            boolean_capacity: boolean_capacity(queries)?,
            floor_size,
            ceiling_size,
            residual_error_at_floor: residual_error(floor_size as f64, queries)?,
            residual_error_at_ceiling: residual_error(ceiling_size as f64, queries)?,
        })
    }
}

/// Rows for `Q = 1..=max_queries`.
pub fn comparison_table(max_queries: u32) -> Result<Vec<ComparisonRow>> {
    if max_queries < 1 {
        return Err(Error::Domain("max_queries must be >= 1".into()));
    }
    (1..=max_queries).map(ComparisonRow::for_queries).collect()
}
