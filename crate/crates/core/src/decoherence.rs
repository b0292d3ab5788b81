//! Grover search under per-iteration dephasing.
//!
//! Ideal search never leaves the plane spanned by the target `|t⟩` and the
//! uniform superposition of the remaining items `|r⟩`. Dephasing that only
//! damps coherence between the target and everything else keeps the state in
//! that plane as well, so a 2×2 density matrix is enough to track it.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::query::grover_angle;

/// 2×2 density matrix in the `(t, r)` basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedDensityState {
    /// Target population.
    pub rho_tt: f64,
    /// Population of the uniform non-target vector.
    pub rho_rr: f64,
    /// Coherence `⟨t|ρ|r⟩`.
    pub rho_tr: Complex64,
}

impl ReducedDensityState {
    pub fn trace(&self) -> f64 {
        self.rho_tt + self.rho_rr
    }

    /// `ρ_tt·ρ_rr − |ρ_tr|²`, the determinant; non-negative for a valid state.
    pub fn positivity_margin(&self) -> f64 {
        self.rho_tt * self.rho_rr - self.rho_tr.norm_sqr()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.rho_tt * self.rho_tt + self.rho_rr * self.rho_rr + 2.0 * self.rho_tr.norm_sqr()
    }
}

/// Dephasing strength applied once per iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecoherenceParams {
    dephasing_rate: f64,
}

impl DecoherenceParams {
    /// `rate` must be non-negative; `+∞` means complete phase loss.
    pub fn new(rate: f64) -> Result<Self> {
        if rate.is_nan() || rate < 0.0 {
            return Err(Error::Domain(format!(
                "dephasing rate must be >= 0, got {rate}"
            )));
        }
        Ok(Self {
            dephasing_rate: rate,
        })
    }

    pub fn ideal() -> Self {
        Self {
            dephasing_rate: 0.0,
        }
    }

    pub fn dephasing_rate(&self) -> f64 {
        self.dephasing_rate
    }

    /// Factor `e^(−γ)` applied to the coherence.
    pub fn coherence_factor(&self) -> f64 {
        (-self.dephasing_rate).exp()
    }
}

fn check_size(database_size: u64) -> Result<()> {
    if database_size < 2 {
        return Err(Error::Domain(format!(
            "database size must be >= 2, got {database_size}"
        )));
    }
    Ok(())
}

/// The uniform superposition over `database_size` items, projected to the plane.
pub fn reduced_initial_state(database_size: u64) -> Result<ReducedDensityState> {
    check_size(database_size)?;
    let rho_tt = 1.0 / database_size as f64;
    let rho_rr = 1.0 - rho_tt;
    Ok(ReducedDensityState {
        rho_tt,
        rho_rr,
        rho_tr: Complex64::new((rho_tt * rho_rr).sqrt(), 0.0),
    })
}

/// One ideal iteration: conjugation by the rotation through `2θ` toward `|t⟩`.
pub fn grover_step_reduced(
    state: &ReducedDensityState,
    database_size: u64,
) -> Result<ReducedDensityState> {
    check_size(database_size)?;
    let two_theta = 2.0 * grover_angle(database_size as f64)?;
    let (s, c) = two_theta.sin_cos();
    Ok(rotate(state, c, s))
}

// R = [[c, s], [−s, c]] in (t, r) order; returns R ρ Rᵀ.
fn rotate(state: &ReducedDensityState, c: f64, s: f64) -> ReducedDensityState {
    let ReducedDensityState {
        rho_tt: tt,
        rho_rr: rr,
        rho_tr: tr,
    } = *state;
    let cross = 2.0 * c * s * tr.re;
    ReducedDensityState {
        rho_tt: c * c * tt + cross + s * s * rr,
        rho_rr: s * s * tt - cross + c * c * rr,
        rho_tr: tr * (c * c) - tr.conj() * (s * s) + Complex64::new(c * s * (rr - tt), 0.0),
    }
}

/// Damps the coherence by `e^(−γ)`; populations are untouched.
pub fn dephase(state: &ReducedDensityState, params: &DecoherenceParams) -> ReducedDensityState {
    ReducedDensityState {
        rho_tr: state.rho_tr * params.coherence_factor(),
        ..*state
    }
}

/// Target population after `queries` rounds of (iterate, dephase).
pub fn noisy_grover(database_size: u64, queries: u32, params: &DecoherenceParams) -> Result<f64> {
    let mut state = reduced_initial_state(database_size)?;
    let two_theta = 2.0 * grover_angle(database_size as f64)?;
    let (s, c) = two_theta.sin_cos();
    for _ in 0..queries {
        state = dephase(&rotate(&state, c, s), params);
    }
    Ok(state.rho_tt)
}
