//! Output records and their JSON / CSV renderings.

use serde_json::{Map, Number, Value};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rounds to 12 significant digits so printed values are stable across platforms.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn float(x: f64) -> Value {
    // non-finite inputs are rejected before a record is built
    Number::from_f64(sig12(x)).map_or(Value::Null, Value::Number)
}

/// One command's result: inputs, named numeric results, and for stochastic
/// commands the seed that reproduces it.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub invocation: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub seed: Option<u64>,
    /// Full amplitude vector as `[re, im]` pairs.
    pub state: Option<Vec<[f64; 2]>>,
    /// `histogram[k]` = chains with `k` wrong sites.
    pub error_count_histogram: Option<Vec<u64>>,
}

impl OutputRecord {
    pub fn new(command: &str, invocation: String) -> Self {
        Self {
            command: command.to_owned(),
            invocation,
            inputs: Map::new(),
            results: Map::new(),
            seed: None,
            state: None,
            error_count_histogram: None,
        }
    }

    pub fn input_int(&mut self, name: &str, v: u64) -> &mut Self {
        self.inputs.insert(name.into(), Value::from(v));
        self
    }

    pub fn input_float(&mut self, name: &str, v: f64) -> &mut Self {
        self.inputs.insert(name.into(), float(v));
        self
    }

    pub fn input_str(&mut self, name: &str, v: &str) -> &mut Self {
        self.inputs.insert(name.into(), Value::from(v));
        self
    }

    pub fn result_int(&mut self, name: &str, v: u64) -> &mut Self {
        self.results.insert(name.into(), Value::from(v));
        self
    }

    pub fn result_float(&mut self, name: &str, v: f64) -> &mut Self {
        self.results.insert(name.into(), float(v));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::from(self.command.clone()));
        obj.insert("invocation".into(), Value::from(self.invocation.clone()));
        obj.insert("version".into(), Value::from(TOOL_VERSION));
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), Value::from(seed));
        }
        obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
        obj.insert("results".into(), Value::Object(self.results.clone()));
        if let Some(state) = &self.state {
            let pairs = state
                .iter()
                .map(|[re, im]| Value::Array(vec![float(*re), float(*im)]))
                .collect();
            obj.insert("state".into(), Value::Array(pairs));
        }
        if let Some(h) = &self.error_count_histogram {
            obj.insert(
                "error_count_histogram".into(),
                Value::Array(h.iter().map(|&c| Value::from(c)).collect()),
            );
        }
        Value::Object(obj)
    }

    /// Flat `(column, cell)` pairs: inputs, seed, results, then amplitudes.
    /// The histogram has no CSV form.
    pub fn csv_columns(&self) -> Vec<(String, String)> {
        let mut cols: Vec<(String, String)> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), cell(v)))
            .collect();
        if let Some(seed) = self.seed {
            cols.push(("seed".into(), seed.to_string()));
        }
        cols.extend(self.results.iter().map(|(k, v)| (k.clone(), cell(v))));
        if let Some(state) = &self.state {
            for (i, [re, im]) in state.iter().enumerate() {
                cols.push((format!("amp{i}_re"), cell(&float(*re))));
                cols.push((format!("amp{i}_im"), cell(&float(*im))));
            }
        }
        cols
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Renders one record as pretty JSON or a two-line CSV.
pub fn render_single(record: &OutputRecord, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(pretty(&record.to_json())),
        Format::Csv => render_table(std::slice::from_ref(record)),
    }
}

/// Renders a sweep: a JSON array of records, or one CSV row per record.
pub fn render_many(records: &[OutputRecord], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(pretty(&Value::Array(
            records.iter().map(OutputRecord::to_json).collect(),
        ))),
        Format::Csv => render_table(records),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}

fn render_table(records: &[OutputRecord]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Option<Vec<String>> = None;
    for record in records {
        let cols = record.csv_columns();
        let names: Vec<String> = cols.iter().map(|(k, _)| k.clone()).collect();
        match &header {
            None => {
                writer.write_record(&names).map_err(csv_err)?;
                header = Some(names);
            }
            Some(h) if *h != names => {
                return Err(CliError::Usage("sweep rows have differing columns".into()))
            }
            Some(_) => {}
        }
        writer
            .write_record(cols.iter().map(|(_, v)| v))
            .map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}
