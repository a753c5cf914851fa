use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::{ReportRow, ScenarioError};

/// Column order of the CSV output.
pub const CSV_COLUMNS: [&str; 8] = [
    "scenario_label",
    "swept_value",
    "entropy_nats",
    "bound_value",
    "margin",
    "satisfied",
    "status",
    "diagnostics",
];

const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ScenarioError::Config(format!(
                "format must be csv or json, got {other}"
            ))),
        }
    }
}

/// `x` rounded to 12 significant digits; non-finite values become `None`.
fn round(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    let text = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    text.parse().ok()
}

fn csv_number(x: f64) -> String {
    match round(x) {
        Some(v) if v != 0.0 && !(1e-5..1e15).contains(&v.abs()) => format!("{v:e}"),
        Some(v) => v.to_string(),
        None => String::new(),
    }
}

fn json_number(x: f64) -> Value {
    round(x).map_or(Value::Null, Value::from)
}

fn json_row(row: &ReportRow) -> Value {
    let diagnostics: Map<String, Value> = row
        .diagnostics
        .iter()
        .map(|(k, &v)| (k.clone(), json_number(v)))
        .collect();
    let mut obj = Map::new();
    obj.insert("scenario_label".into(), row.scenario_label.clone().into());
    obj.insert(
        "swept_value".into(),
        row.swept_value.map_or(Value::Null, json_number),
    );
    obj.insert("entropy_nats".into(), json_number(row.entropy_nats));
    obj.insert("bound_value".into(), json_number(row.bound_value));
    obj.insert("margin".into(), json_number(row.margin));
    obj.insert("satisfied".into(), row.satisfied.into());
    obj.insert("status".into(), row.status.clone().into());
    obj.insert("diagnostics".into(), Value::Object(diagnostics));
    Value::Object(obj)
}

/// Writes `rows` to `out`. CSV diagnostics are packed as `key=value` pairs
/// joined by `;` in key order.
pub fn write_rows<W: Write>(
    rows: &[ReportRow],
    format: OutputFormat,
    mut out: W,
) -> Result<(), ScenarioError> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let to_io = |e: csv::Error| ScenarioError::Io(io::Error::other(e));
            w.write_record(CSV_COLUMNS).map_err(to_io)?;
            for row in rows {
                let diagnostics = row
                    .diagnostics
                    .iter()
                    .map(|(k, &v)| format!("{k}={}", csv_number(v)))
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    row.scenario_label.clone(),
                    row.swept_value.map(csv_number).unwrap_or_default(),
                    csv_number(row.entropy_nats),
                    csv_number(row.bound_value),
                    csv_number(row.margin),
                    row.satisfied.to_string(),
                    row.status.clone(),
                    diagnostics,
                ])
                .map_err(to_io)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let array = Value::Array(rows.iter().map(json_row).collect());
            serde_json::to_writer_pretty(&mut out, &array).map_err(io::Error::other)?;
            writeln!(out)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Writes `rows` to the file at `destination`, or to standard output.
pub fn emit(
    rows: &[ReportRow],
    format: OutputFormat,
    destination: Option<&Path>,
) -> Result<(), ScenarioError> {
    match destination {
        Some(path) => write_rows(rows, format, BufWriter::new(File::create(path)?)),
        None => write_rows(rows, format, io::stdout().lock()),
    }
}
