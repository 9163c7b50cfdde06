//! Sweep reports: the CSV/JSON tables produced by `expand` and `validate`.
//!
//! A report is self-describing: `#`-prefixed metadata lines, then a fixed
//! header row, then data rows sorted by (alpha, n_eff). Floats are written
//! with the shortest representation that parses back to the identical bits,
//! so `from_csv` followed by `to_csv` is byte-identical and downstream error
//! analysis is never quantization-limited.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str =
    "alpha,n_eff,leading,correction,total,p_sh,sensitivity,oracle_value,abs_error";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub n_eff: u64,
    pub leading: f64,
    pub correction: f64,
    pub total: f64,
    pub p_sh: f64,
    pub sensitivity: f64,
    pub oracle_value: Option<f64>,
    pub abs_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Ordered key/value pairs rendered as `# key: value`; keys may repeat.
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Builds a report, sorting rows by (alpha, n_eff).
    pub fn new(metadata: Vec<(String, String)>, mut rows: Vec<SweepRow>) -> Result<Self> {
        for row in &rows {
            if row.oracle_value.is_some() != row.abs_error.is_some() {
                return Err(CliError::Data(
                    "oracle_value and abs_error must be present together".into(),
                ));
            }
        }
        rows.sort_by(|a, b| {
            a.alpha
                .total_cmp(&b.alpha)
                .then_with(|| a.n_eff.cmp(&b.n_eff))
        });
        Ok(SweepReport { metadata, rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.metadata {
            out.push_str("# ");
            out.push_str(key);
            out.push_str(": ");
            out.push_str(value);
            out.push('\n');
        }
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                row.alpha,
                row.n_eff,
                row.leading,
                row.correction,
                row.total,
                row.p_sh,
                row.sensitivity,
                opt(row.oracle_value),
                opt(row.abs_error),
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut metadata = Vec::new();
        let mut rows = Vec::new();
        let mut header_seen = false;
        for (index, line) in text.lines().enumerate() {
            let bad =
                |what: &str| CliError::Data(format!("report line {}: {what}: {line:?}", index + 1));
            if let Some(rest) = line.strip_prefix('#') {
                if header_seen {
                    return Err(bad("metadata after the header row"));
                }
                let (key, value) = rest
                    .trim_start()
                    .split_once(": ")
                    .ok_or_else(|| bad("expected '# key: value'"))?;
                metadata.push((key.to_string(), value.to_string()));
                continue;
            }
            if !header_seen {
                if line != CSV_HEADER {
                    return Err(bad("expected the report header row"));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 9 {
                return Err(bad("expected 9 comma-separated fields"));
            }
            let num =
                |field: &str| -> Result<f64> { field.parse().map_err(|_| bad("invalid number")) };
            let opt = |field: &str| -> Result<Option<f64>> {
                if field.is_empty() {
                    Ok(None)
                } else {
                    num(field).map(Some)
                }
            };
            rows.push(SweepRow {
                alpha: num(fields[0])?,
                n_eff: fields[1].parse().map_err(|_| bad("invalid n_eff"))?,
                leading: num(fields[2])?,
                correction: num(fields[3])?,
                total: num(fields[4])?,
                p_sh: num(fields[5])?,
                sensitivity: num(fields[6])?,
                oracle_value: opt(fields[7])?,
                abs_error: opt(fields[8])?,
            });
        }
        if !header_seen {
            return Err(CliError::Data("report has no header row".into()));
        }
        SweepReport::new(metadata, rows)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn render(&self, format: crate::args::FormatArg) -> String {
        match format {
            crate::args::FormatArg::Csv => self.to_csv(),
            crate::args::FormatArg::Json => self.to_json(),
        }
    }
}
