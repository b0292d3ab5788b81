//! State-vector Grover search over an unstructured database of `N` items.
//!
//! The state is a plain vector of `N` complex amplitudes, one per item. A
//! search iteration is the oracle sign flip on the marked item followed by
//! reflection of every amplitude about the mean, both `O(N)`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance on `|‖ψ‖² − 1|`.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalized vector of complex amplitudes over `N ≥ 2` items.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeState {
    amplitudes: Vec<Complex64>,
}

impl AmplitudeState {
    /// Wraps `amplitudes` after checking the size and the squared norm.
    ///
    /// The state is never renormalized; a squared norm off by more than
    /// [`NORM_TOLERANCE`] is rejected.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidSize(amplitudes.len()));
        }
        let norm = squared_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Normalization(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn squared_norm(&self) -> f64 {
        squared_norm(&self.amplitudes)
    }

    /// `|a_i|²` for every item.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

fn squared_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

/// A database of `size` items with exactly one marked `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    size: usize,
    target: usize,
}

impl SearchSpec {
    pub fn new(size: usize, target: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidSize(size));
        }
        if target >= size {
            return Err(Error::InvalidTarget { target, size });
        }
        Ok(Self { size, target })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn target(&self) -> usize {
        self.target
    }

    fn check(&self, state: &AmplitudeState) -> Result<()> {
        if state.size() != self.size {
            return Err(Error::DimensionMismatch {
                state: state.size(),
                expected: self.size,
            });
        }
        Ok(())
    }
}

/// Equal real amplitude `1/√size` on every item.
pub fn uniform_state(size: usize) -> Result<AmplitudeState> {
    if size < 2 {
        return Err(Error::InvalidSize(size));
    }
    let a = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
    AmplitudeState::new(vec![a; size])
}

/// Negates the amplitude of the marked item.
pub fn oracle_reflect(state: &AmplitudeState, spec: &SearchSpec) -> Result<AmplitudeState> {
    spec.check(state)?;
    let mut amplitudes = state.amplitudes.clone();
    amplitudes[spec.target] = -amplitudes[spec.target];
    Ok(AmplitudeState { amplitudes })
}

/// Reflects every amplitude about the mean: `a_i ↦ 2·mean − a_i`.
pub fn diffusion(state: &AmplitudeState) -> AmplitudeState {
    let n = state.size() as f64;
    let mean = state.amplitudes.iter().sum::<Complex64>() / n;
    let twice_mean = mean * 2.0;
    let amplitudes = state.amplitudes.iter().map(|&a| twice_mean - a).collect();
    AmplitudeState { amplitudes }
}

/// One search iteration: oracle reflection, then diffusion.
pub fn grover_iterate(state: &AmplitudeState, spec: &SearchSpec) -> Result<AmplitudeState> {
    oracle_reflect(state, spec).map(|s| diffusion(&s))
}

/// Runs `queries` iterations starting from the uniform superposition.
pub fn run_grover(spec: &SearchSpec, queries: u32) -> Result<AmplitudeState> {
    let mut state = uniform_state(spec.size)?;
    for _ in 0..queries {
        state = grover_iterate(&state, spec)?;
    }
    Ok(state)
}

/// Probability of observing the marked item.
pub fn success_probability(state: &AmplitudeState, spec: &SearchSpec) -> Result<f64> {
    spec.check(state)?;
    Ok(state.amplitudes[spec.target].norm_sqr())
}

/// Samples an item index with probability `|a_i|²`.
///
/// Consumes exactly one `f64` from `rng`.
pub fn measure<R: Rng + ?Sized>(state: &AmplitudeState, rng: &mut R) -> Result<usize> {
    let norm = state.squared_norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Normalization(norm));
    }
    let u: f64 = rng.random::<f64>() * norm;
    let mut cumulative = 0.0;
    let mut last_nonzero = 0;
    for (i, a) in state.amplitudes.iter().enumerate() {
        let p = a.norm_sqr();
        if p > 0.0 {
            cumulative += p;
            last_nonzero = i;
            if u < cumulative {
                return Ok(i);
            }
        }
    }
    // u landed in the rounding gap at the top of the cumulative sum
    Ok(last_nonzero)
}
