//! Monte Carlo model of template-directed chain assembly.
//!
//! A chain of `L` sites is built one site at a time; each site is filled by a
//! `Q`-query search over an alphabet of `N` building blocks and picks the wrong
//! block with probability `ε(N, Q)`. Sites err independently.
//!
//! Each trial (one chain) draws from its own ChaCha8 stream, selected by the
//! trial index, so results do not depend on how trials are scheduled across
//! threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::amplitude::{measure, run_grover, AmplitudeState, SearchSpec};
use crate::error::{Error, Result};
use crate::query::residual_error;

/// Largest alphabet accepted by [`SiteModel::StateVector`].
pub const STATE_VECTOR_MAX_ALPHABET: u64 = 32;

/// Chain length used by [`alphabet_scorecard`].
pub const SCORECARD_CHAIN_LENGTH: u64 = 1000;

/// How a single site's outcome is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteModel {
    /// Bernoulli draw with the closed-form residual error.
    #[default]
    ClosedForm,
    /// Random target, full state-vector search, then a measurement.
    /// Only for alphabets up to [`STATE_VECTOR_MAX_ALPHABET`].
    StateVector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssemblyConfig {
    pub alphabet_size: u64,
    pub queries: u32,
    pub chain_length: u64,
    pub trials: u64,
    pub seed: u64,
    pub site_model: SiteModel,
}

impl AssemblyConfig {
    pub fn new(
        alphabet_size: u64,
        queries: u32,
        chain_length: u64,
        trials: u64,
        seed: u64,
    ) -> Self {
        Self {
            alphabet_size,
            queries,
            chain_length,
            trials,
            seed,
            site_model: SiteModel::ClosedForm,
        }
    }

    pub fn with_site_model(mut self, site_model: SiteModel) -> Self {
        self.site_model = site_model;
        self
    }

    /// Checks the bounds and returns `trials · chain_length`.
    pub fn validate(&self) -> Result<u64> {
        if self.alphabet_size < 2 {
            return Err(Error::Domain(format!(
                "alphabet size must be >= 2, got {}",
                self.alphabet_size
            )));
        }
        if self.queries < 1 {
            return Err(Error::Domain("queries must be >= 1".into()));
        }
        if self.chain_length < 1 {
            return Err(Error::Domain("chain length must be >= 1".into()));
        }
        if self.trials < 1 {
            return Err(Error::Domain("trials must be >= 1".into()));
        }
        if self.site_model == SiteModel::StateVector
            && self.alphabet_size > STATE_VECTOR_MAX_ALPHABET
        {
            return Err(Error::Domain(format!(
                "state-vector site model supports alphabets up to {STATE_VECTOR_MAX_ALPHABET}, got {}",
                self.alphabet_size
            )));
        }
        self.trials.checked_mul(self.chain_length).ok_or_else(|| {
            Error::Range(format!(
                "{} trials x {} sites overflows a 64-bit counter",
                self.trials, self.chain_length
            ))
        })
    }
}

/// A point estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub standard_error: f64,
}

impl Estimate {
    fn binomial(successes: u64, samples: u64) -> Self {
        let p = successes as f64 / samples as f64;
        Self {
            value: p,
            standard_error: (p * (1.0 - p) / samples as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssemblyReport {
    pub config: AssemblyConfig,
    pub per_site_error: f64,
    pub expected_chain_fidelity: f64,
    pub total_sites: u64,
    pub total_errors: u64,
    pub error_free_chains: u64,
    pub empirical_site_error: Estimate,
    pub empirical_chain_fidelity: Estimate,
    /// `histogram[k]` counts chains with exactly `k` wrong sites.
    pub error_count_histogram: Vec<u64>,
}

/// Per-site error for an alphabet of `alphabet_size` searched with `queries` queries.
pub fn per_site_error(alphabet_size: u64, queries: u32) -> Result<f64> {
    residual_error(alphabet_size as f64, queries)
}

/// Probability that all `chain_length` independent sites come out right.
pub fn chain_fidelity(site_error: f64, chain_length: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&site_error) {
        return Err(Error::Domain(format!(
            "site error must lie in [0, 1], got {site_error}"
        )));
    }
    if chain_length < 1 {
        return Err(Error::Domain("chain length must be >= 1".into()));
    }
    // exp(L·ln(1−ε)) keeps precision for tiny ε and huge L
    Ok((chain_length as f64 * (-site_error).ln_1p()).exp())
}

/// The random stream for trial `trial` under `seed`.
pub fn trial_stream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

enum Sampler {
    Bernoulli(f64),
    Search(Vec<AmplitudeState>),
}

impl Sampler {
    fn new(config: &AssemblyConfig, site_error: f64) -> Result<Self> {
        Ok(match config.site_model {
            SiteModel::ClosedForm => Sampler::Bernoulli(site_error),
            SiteModel::StateVector => {
                let n = config.alphabet_size as usize;
                let states = (0..n)
                    .map(|t| run_grover(&SearchSpec::new(n, t)?, config.queries))
                    .collect::<Result<Vec<_>>>()?;
                Sampler::Search(states)
            }
        })
    }

    fn site_errs(&self, rng: &mut ChaCha8Rng) -> Result<bool> {
        match self {
            Sampler::Bernoulli(p) => Ok(rng.random::<f64>() < *p),
            Sampler::Search(states) => {
                let target = rng.random_range(0..states.len());
                Ok(measure(&states[target], rng)? != target)
            }
        }
    }

    fn count_errors(&self, chain_length: u64, rng: &mut ChaCha8Rng) -> Result<u64> {
        let mut errors = 0;
        for _ in 0..chain_length {
            errors += u64::from(self.site_errs(rng)?);
        }
        Ok(errors)
    }
}

/// Runs `config.trials` independent chains and aggregates error statistics.
///
/// Trials run in parallel; per-trial error counts are integers reduced in
/// trial order, so the report is identical for a given config.
pub fn simulate_assembly(config: &AssemblyConfig) -> Result<AssemblyReport> {
    let total_sites = config.validate()?;
    let site_error = per_site_error(config.alphabet_size, config.queries)?;
    let sampler = Sampler::new(config, site_error)?;

    let per_trial = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_stream(config.seed, trial);
            sampler.count_errors(config.chain_length, &mut rng)
        })
        .collect::<Result<Vec<u64>>>()?;

    let total_errors: u64 = per_trial.iter().sum();
    let max_errors = per_trial.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0u64; max_errors as usize + 1];
    for &k in &per_trial {
        histogram[k as usize] += 1;
    }
    let error_free_chains = histogram[0];

    Ok(AssemblyReport {
        config: config.clone(),
        per_site_error: site_error,
        expected_chain_fidelity: chain_fidelity(site_error, config.chain_length)?,
        total_sites,
        total_errors,
        error_free_chains,
        empirical_site_error: Estimate::binomial(total_errors, total_sites),
        empirical_chain_fidelity: Estimate::binomial(error_free_chains, config.trials),
        error_count_histogram: histogram,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScorecardRow {
    pub queries: u32,
    pub alphabet_size: u64,
    pub site_error: f64,
    pub chain_fidelity: f64,
}

/// Closed-form error and fidelity (at [`SCORECARD_CHAIN_LENGTH`] sites) for the
/// alphabets 4, 10, 20 and 21 at their natural query counts.
pub fn alphabet_scorecard() -> Vec<ScorecardRow> {
    [(1, 4), (2, 10), (3, 20), (3, 21)]
        .into_iter()
        .map(|(queries, alphabet_size)| {
            let site_error = per_site_error(alphabet_size, queries).expect("alphabet >= 2");
            ScorecardRow {
                queries,
                alphabet_size,
                site_error,
                chain_fidelity: chain_fidelity(site_error, SCORECARD_CHAIN_LENGTH)
                    .expect("valid site error"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_site_error_examples() {
        assert!(per_site_error(4, 1).unwrap() <= 1e-12);
        assert!((per_site_error(21, 3).unwrap() - 9.533e-4).abs() < 1e-7);
        assert!((per_site_error(10, 2).unwrap() - 1.44e-3).abs() < 1e-12);
        assert!(per_site_error(1, 1).is_err());
    }

    #[test]
    fn chain_fidelity_examples() {
        assert_eq!(chain_fidelity(0.0, 123_456).unwrap(), 1.0);
        // (1 − 9.7e-4)^1000 = 0.378904625075531... (30-digit reference)
        assert!((chain_fidelity(9.7e-4, 1000).unwrap() - 0.378_904_625_075_531).abs() < 1e-12);
        assert!((chain_fidelity(0.25, 1).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(chain_fidelity(1.0, 3).unwrap(), 0.0);
        assert!(chain_fidelity(-0.1, 3).is_err());
        assert!(chain_fidelity(0.1, 0).is_err());
    }

    #[test]
    fn exact_alphabet_never_errs() {
        let report = simulate_assembly(&AssemblyConfig::new(4, 1, 10_000, 10, 3)).unwrap();
        assert_eq!(report.total_errors, 0);
        assert_eq!(report.error_free_chains, 10);
        assert_eq!(report.error_count_histogram, vec![10]);
        assert_eq!(report.empirical_site_error.standard_error, 0.0);
    }

    #[test]
    fn same_seed_same_report() {
        let config = AssemblyConfig::new(21, 3, 1000, 50, 99);
        assert_eq!(
            simulate_assembly(&config).unwrap(),
            simulate_assembly(&config).unwrap()
        );
    }

    #[test]
    fn config_validation() {
        assert!(simulate_assembly(&AssemblyConfig::new(1, 1, 10, 10, 0)).is_err());
        assert!(simulate_assembly(&AssemblyConfig::new(4, 0, 10, 10, 0)).is_err());
        assert!(simulate_assembly(&AssemblyConfig::new(4, 1, 0, 10, 0)).is_err());
        assert!(simulate_assembly(&AssemblyConfig::new(4, 1, 10, 0, 0)).is_err());
        assert!(matches!(
            AssemblyConfig::new(4, 1, u64::MAX, 2, 0).validate(),
            Err(Error::Range(_))
        ));
        let big = AssemblyConfig::new(33, 4, 10, 10, 0).with_site_model(SiteModel::StateVector);
        assert!(matches!(big.validate(), Err(Error::Domain(_))));
    }

    #[test]
    fn histogram_accounts_for_every_chain() {
        let report = simulate_assembly(&AssemblyConfig::new(10, 1, 20, 500, 5)).unwrap();
        assert_eq!(report.error_count_histogram.iter().sum::<u64>(), 500);
        let weighted: u64 = report
            .error_count_histogram
            .iter()
            .enumerate()
            .map(|(k, c)| k as u64 * c)
            .sum();
        assert_eq!(weighted, report.total_errors);
    }

    #[test]
    fn scorecard_rows() {
        let rows = alphabet_scorecard();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].queries, rows[0].alphabet_size), (1, 4));
        assert!(rows[0].site_error <= 1e-12);
        assert!((rows[0].chain_fidelity - 1.0).abs() < 1e-9);
        assert!((rows[1].site_error - 1.44e-3).abs() < 1e-12);
        assert!((rows[2].site_error - 6.08e-5).abs() < 1e-12);
        assert!((rows[3].site_error - 9.533e-4).abs() < 1e-7);
    }
}
