use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qsearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsearch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = qsearch(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn result(v: &Value, key: &str) -> f64 {
    v["results"][key].as_f64().unwrap()
}

fn assert_usage_error(args: &[&str]) {
    let out = qsearch(args);
    assert!(!out.status.success(), "{args:?} should fail");
    assert!(out.stdout.is_empty(), "{args:?} wrote partial output");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn solve_outputs() {
    let v = ok_json(&["solve", "--q", "3"]);
    assert!((result(&v, "n_optimal") - 20.20).abs() < 0.005);
    assert_eq!(v["results"]["boolean"], 8);
    let v = ok_json(&["solve", "--q", "1"]);
    assert_eq!(result(&v, "n_optimal"), 4.0);
    assert!(result(&v, "residual_error_floor") <= 1e-12);
    assert_usage_error(&["solve", "--q", "0"]);
}

#[test]
fn grover_outputs() {
    assert!((result(&ok_json(&["grover", "--n", "4", "--q", "1"]), "success") - 1.0).abs() < 1e-12);
    assert!(
        (result(&ok_json(&["grover", "--n", "10", "--q", "2"]), "success") - 0.99856).abs() < 1e-11
    );
    assert_eq!(
        result(&ok_json(&["grover", "--n", "8", "--q", "0"]), "success"),
        0.125
    );
    assert_usage_error(&["grover", "--n", "1", "--q", "1"]);
    assert_usage_error(&["grover", "--n", "4", "--q", "1", "--target", "4"]);
}

#[test]
fn decohere_outputs() {
    let noisy = ok_json(&["decohere", "--n", "10", "--q", "2", "--gamma", "0"]);
    let ideal = ok_json(&["grover", "--n", "10", "--q", "2"]);
    assert!((result(&noisy, "success") - result(&ideal, "success")).abs() < 1e-10);
    let v = ok_json(&["decohere", "--n", "4", "--q", "1", "--gamma", "5"]);
    assert!((result(&v, "success") - 1.0).abs() < 1e-12);
    assert_usage_error(&["decohere", "--n", "10", "--q", "2", "--gamma", "-1"]);
    assert_usage_error(&["decohere", "--n", "10", "--q", "2", "--gamma", "inf"]);
}

#[test]
fn assemble_outputs() {
    let v = ok_json(&[
        "assemble", "--n", "4", "--q", "1", "--length", "1000", "--trials", "100", "--seed", "7",
    ]);
    assert_eq!(v["results"]["total_errors"], 0);
    assert_eq!(v["seed"], 7);

    let v = ok_json(&[
        "assemble", "--n", "21", "--q", "3", "--length", "1000", "--trials", "1000", "--seed", "7",
    ]);
    let eps = result(&v, "per_site_error");
    let sites = 1e6;
    assert!(
        (result(&v, "empirical_site_error") - eps).abs()
            <= 3.0 * (eps * (1.0 - eps) / sites).sqrt()
    );
    assert_usage_error(&["assemble", "--n", "4", "--q", "1", "--length", "0"]);
    assert_usage_error(&[
        "assemble",
        "--n",
        "40",
        "--q",
        "1",
        "--length",
        "5",
        "--site-model",
        "state-vector",
    ]);
}

#[test]
fn unseeded_run_reproduces_from_emitted_seed() {
    let args = [
        "assemble", "--n", "10", "--q", "2", "--length", "500", "--trials", "50",
    ];
    let first = qsearch(&args);
    assert!(first.status.success());
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let seed = v["seed"].as_u64().unwrap().to_string();
    let mut again = args.to_vec();
    again.extend(["--seed", &seed]);
    assert_eq!(qsearch(&again).stdout, first.stdout);
}

#[test]
fn sweep_gamma_rows() {
    let out = qsearch(&[
        "sweep",
        "decohere",
        "--axis",
        "dephasing_rate",
        "--start",
        "0",
        "--stop",
        "2",
        "--step",
        "0.1",
        "--n",
        "10",
        "--q",
        "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "database_size,queries,dephasing_rate,success,ideal_success,success_loss"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 21);
    let ideal = result(&ok_json(&["grover", "--n", "10", "--q", "2"]), "success");
    assert!((rows[0][3] - ideal).abs() < 1e-10);
    for (i, row) in rows.iter().enumerate() {
        assert!((row[2] - 0.1 * i as f64).abs() < 1e-12);
    }
}

#[test]
fn sweep_solve_is_increasing() {
    let out = qsearch(&[
        "sweep", "solve", "--axis", "queries", "--start", "1", "--stop", "5", "--step", "1",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let col = reader
        .headers()
        .unwrap()
        .iter()
        .position(|h| h == "n_optimal")
        .unwrap();
    let n: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[col].parse().unwrap())
        .collect();
    assert_eq!(n.len(), 5);
    assert!(n.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sweep_usage_errors() {
    assert_usage_error(&[
        "sweep", "solve", "--axis", "queries", "--start", "5", "--stop", "1", "--step", "1",
    ]);
    assert_usage_error(&[
        "sweep", "solve", "--axis", "queries", "--start", "1", "--stop", "5", "--step", "0",
    ]);
    assert_usage_error(&[
        "sweep", "grover", "--axis", "gamma", "--start", "0", "--stop", "1", "--step", "0.5",
        "--n", "4", "--q", "1",
    ]);
    assert_usage_error(&[
        "sweep", "decohere", "--axis", "q", "--start", "1", "--stop", "3", "--step", "1",
        "--gamma", "0.1",
    ]);
    // the n=1 cell fails after n=2..; nothing may be printed
    assert_usage_error(&[
        "sweep", "grover", "--axis", "n", "--start", "1", "--stop", "3", "--step", "1", "--q", "1",
    ]);
}

#[test]
fn invalid_flags_fail_with_one_line() {
    assert_usage_error(&["solve"]);
    assert_usage_error(&["frobnicate"]);
    assert_usage_error(&["grover", "--n", "4", "--q", "1", "--format", "xml"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solve.json");
    let out = qsearch(&["solve", "--q", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((result(&v, "n_optimal") - 10.47).abs() < 0.005);

    let missing = dir.path().join("no/such/dir/x.json");
    let out = qsearch(&["solve", "--q", "2", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_outputs_match_schema() {
    let schema = validator();
    let runs: [&[&str]; 6] = [
        &["solve", "--q", "4"],
        &["grover", "--n", "6", "--q", "2", "--emit-state"],
        &["decohere", "--n", "12", "--q", "2", "--gamma", "0.4"],
        &[
            "assemble", "--n", "20", "--q", "3", "--length", "200", "--trials", "20", "--seed", "3",
        ],
        &[
            "sweep", "assemble", "--axis", "length", "--start", "10", "--stop", "30", "--step",
            "10", "--n", "10", "--q", "2", "--seed", "1", "--format", "json",
        ],
        &[
            "sweep", "grover", "--axis", "n", "--start", "2", "--stop", "9", "--step", "1", "--q",
            "1", "--format", "json",
        ],
    ];
    for args in runs {
        let v = ok_json(args);
        let errors: Vec<String> = schema.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let mut bad = ok_json(&[
        "assemble", "--n", "4", "--q", "1", "--length", "5", "--seed", "1",
    ]);
    bad.as_object_mut().unwrap().remove("seed");
    assert!(!schema.is_valid(&bad));
}

#[test]
fn csv_header_is_stable() {
    let out = qsearch(&[
        "assemble", "--n", "4", "--q", "1", "--length", "5", "--seed", "1", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "alphabet_size,queries,chain_length,trials,site_model,seed,per_site_error,expected_chain_fidelity,\
         total_sites,total_errors,error_free_chains,empirical_site_error,empirical_site_error_se,\
         empirical_chain_fidelity,empirical_chain_fidelity_se"
    );
}
