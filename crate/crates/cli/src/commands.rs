//! One function per subcommand, each turning validated parameters into an
//! [`OutputRecord`].

use qsearch::{
    classical_guess_success, grover_angle, minimal_queries, noisy_grover, residual_error,
    run_grover, simulate_assembly, success_probability, AssemblyConfig, ComparisonRow,
    DecoherenceParams, SearchSpec, SiteModel,
};

use crate::record::{sig12, OutputRecord};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveParams {
    pub queries: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverParams {
    pub database_size: usize,
    pub queries: u32,
    pub target: usize,
    pub emit_state: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecohereParams {
    pub database_size: u64,
    pub queries: u32,
    pub dephasing_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssembleParams {
    pub alphabet_size: u64,
    pub queries: u32,
    pub chain_length: u64,
    pub trials: u64,
    pub seed: u64,
    pub site_model: SiteModel,
}

fn site_model_name(m: SiteModel) -> &'static str {
    match m {
        SiteModel::ClosedForm => "closed-form",
        SiteModel::StateVector => "state-vector",
    }
}

pub fn solve(p: &SolveParams) -> Result<OutputRecord, CliError> {
    let row = ComparisonRow::for_queries(p.queries)?;
    let mut r = OutputRecord::new("solve", format!("solve --q {}", p.queries));
    r.input_int("queries", u64::from(p.queries));
    r.result_float("n_optimal", row.quantum_capacity)
        .result_float("angle", grover_angle(row.quantum_capacity)?)
        .result_int("boolean", row.boolean_capacity)
        .result_int("n_floor", row.floor_size)
        .result_int("n_ceil", row.ceiling_size)
        .result_float("residual_error_floor", row.residual_error_at_floor)
        .result_float("residual_error_ceil", row.residual_error_at_ceiling)
        .result_float(
            "classical_success_floor",
            classical_guess_success(row.floor_size, u64::from(p.queries))?,
        );
    Ok(r)
}

pub fn grover(p: &GroverParams) -> Result<OutputRecord, CliError> {
    let spec = SearchSpec::new(p.database_size, p.target)?;
    let state = run_grover(&spec, p.queries)?;
    let n = p.database_size as f64;
    let mut invocation = format!(
        "grover --n {} --q {} --target {}",
        p.database_size, p.queries, p.target
    );
    if p.emit_state {
        invocation.push_str(" --emit-state");
    }
    let mut r = OutputRecord::new("grover", invocation);
    r.input_int("database_size", p.database_size as u64)
        .input_int("queries", u64::from(p.queries))
        .input_int("target", p.target as u64);
    r.result_float("success", success_probability(&state, &spec)?)
        .result_float("closed_form_success", 1.0 - residual_error(n, p.queries)?)
        .result_float("angle", grover_angle(n)?)
        .result_int("minimal_queries", u64::from(minimal_queries(n)?))
        .result_float(
            "classical_success",
            classical_guess_success(p.database_size as u64, u64::from(p.queries))?,
        );
    if p.emit_state {
        r.state = Some(state.amplitudes().iter().map(|a| [a.re, a.im]).collect());
    }
    Ok(r)
}

pub fn decohere(p: &DecohereParams) -> Result<OutputRecord, CliError> {
    if !p.dephasing_rate.is_finite() {
        return Err(CliError::Usage(format!(
            "dephasing rate must be finite, got {}",
            p.dephasing_rate
        )));
    }
    let params = DecoherenceParams::new(p.dephasing_rate)?;
    let noisy = noisy_grover(p.database_size, p.queries, &params)?;
    let ideal = noisy_grover(p.database_size, p.queries, &DecoherenceParams::ideal())?;
    let mut r = OutputRecord::new(
        "decohere",
        format!(
            "decohere --n {} --q {} --gamma {}",
            p.database_size,
            p.queries,
            sig12(p.dephasing_rate)
        ),
    );
    r.input_int("database_size", p.database_size)
        .input_int("queries", u64::from(p.queries))
        .input_float("dephasing_rate", p.dephasing_rate);
    r.result_float("success", noisy)
        .result_float("ideal_success", ideal)
        .result_float("success_loss", ideal - noisy);
    Ok(r)
}

pub fn assemble(p: &AssembleParams) -> Result<OutputRecord, CliError> {
    let config = AssemblyConfig::new(p.alphabet_size, p.queries, p.chain_length, p.trials, p.seed)
        .with_site_model(p.site_model);
    let report = simulate_assembly(&config)?;
    let mut r = OutputRecord::new(
        "assemble",
        format!(
            "assemble --n {} --q {} --length {} --trials {} --site-model {} --seed {}",
            p.alphabet_size,
            p.queries,
            p.chain_length,
            p.trials,
            site_model_name(p.site_model),
            p.seed
        ),
    );
    r.seed = Some(p.seed);
    r.input_int("alphabet_size", p.alphabet_size)
        .input_int("queries", u64::from(p.queries))
        .input_int("chain_length", p.chain_length)
        .input_int("trials", p.trials)
        .input_str("site_model", site_model_name(p.site_model));
    r.result_float("per_site_error", report.per_site_error)
        .result_float("expected_chain_fidelity", report.expected_chain_fidelity)
        .result_int("total_sites", report.total_sites)
        .result_int("total_errors", report.total_errors)
        .result_int("error_free_chains", report.error_free_chains)
        .result_float("empirical_site_error", report.empirical_site_error.value)
        .result_float(
            "empirical_site_error_se",
            report.empirical_site_error.standard_error,
        )
        .result_float(
            "empirical_chain_fidelity",
            report.empirical_chain_fidelity.value,
        )
        .result_float(
            "empirical_chain_fidelity_se",
            report.empirical_chain_fidelity.standard_error,
        );
    r.error_count_histogram = Some(report.error_count_histogram);
    Ok(r)
}
