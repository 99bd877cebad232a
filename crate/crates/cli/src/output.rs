//! Result envelope and writers.

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::CliError;

/// Rows for CSV output.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    /// Column names.
    pub headers: Vec<String>,
    /// Cells, already formatted.
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// Empty table with the given columns.
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row of displayable cells.
    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Structured results.
    pub results: Value,
    /// Tabular view, if the payload is a table.
    pub table: Option<Table>,
    /// False when a check failed (exit code 1).
    pub passed: bool,
}

impl Outcome {
    /// Successful outcome without a table.
    pub fn ok(results: Value) -> Self {
        Self { results, table: None, passed: true }
    }

    /// Attaches a table.
    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    /// Sets the check verdict.
    pub fn verdict(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: String,
    params: &'a Value,
    seed: u64,
    results: &'a Value,
    timing_ms: Option<f64>,
}

/// Renders the outcome in the configured format.
pub fn render(config: &RunConfig, outcome: &Outcome, timing_ms: Option<f64>) -> Result<String, CliError> {
    match config.format {
        Format::Json => {
            let env = Envelope {
                command: config.command.join(" "),
                params: &config.params,
                seed: config.seed,
                results: &outcome.results,
                timing_ms,
            };
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = outcome.table.as_ref().ok_or_else(|| {
                CliError::Usage(format!("'{}' has no tabular output; use --format json", config.command.join(" ")))
            })?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers).map_err(|e| CliError::Io(e.to_string()))?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
