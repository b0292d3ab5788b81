//! Grover search as an explicit amplitude-vector algorithm, the optimality
//! relation between alphabet size and query count, dephasing of the search,
//! and a Monte Carlo model of chain assembly built on top of it.

pub mod amplitude;
pub mod assembly;
pub mod decoherence;
pub mod error;
pub mod query;

pub use amplitude::{
    diffusion, grover_iterate, measure, oracle_reflect, run_grover, success_probability,
    uniform_state, AmplitudeState, SearchSpec,
};
pub use assembly::{
    alphabet_scorecard, chain_fidelity, per_site_error, simulate_assembly, AssemblyConfig,
    AssemblyReport, Estimate, ScorecardRow, SiteModel,
};
pub use decoherence::{
    dephase, grover_step_reduced, noisy_grover, reduced_initial_state, DecoherenceParams,
    ReducedDensityState,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use query::{
    boolean_capacity, classical_guess_success, comparison_table, grover_angle, minimal_queries,
    optimal_database_size, residual_error, ComparisonRow, QueryPlan,
};
