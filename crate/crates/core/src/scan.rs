//! Tabular scan output shared by the library drivers and the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::{Error, Result};

/// One grid point. Failed evaluations keep their row with NaN values and the
/// error text, so a pole inside a scan does not abort it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub values: Vec<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanTable {
    pub columns: Vec<String>,
    pub rows: Vec<ScanRow>,
    pub meta: BTreeMap<String, String>,
}

impl ScanTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new(), meta: BTreeMap::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(ScanRow { values, error: None });
    }

    /// Push `grid` followed by either the computed values or NaNs and the error.
    pub fn push_result(&mut self, grid: &[f64], result: Result<Vec<f64>>) {
        match result {
            Ok(mut v) => {
                let mut values = grid.to_vec();
                values.append(&mut v);
                self.push(values);
            }
            Err(e) => {
                let mut values = grid.to_vec();
                values.resize(self.columns.len(), f64::NAN);
                self.rows.push(ScanRow { values, error: Some(e.to_string()) });
            }
        }
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Invalid(format!("no column named {name}")))?;
        Ok(self.rows.iter().map(|r| r.values[idx]).collect())
    }

    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    /// CSV with a header row, shortest round-trip floats and a trailing
    /// `error` column. Metadata goes into leading `# key=value` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push_str(",error\n");
        for row in &self.rows {
            for (i, v) in row.values.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_float(&mut out, *v);
            }
            out.push(',');
            if let Some(e) = &row.error {
                out.push('"');
                out.push_str(&e.replace('"', "\"\""));
                out.push('"');
            }
            out.push('\n');
        }
        out
    }
}

/// Shortest round-trip digits, switching to exponent form for very small or
/// large magnitudes.
fn write_float(out: &mut String, v: f64) {
    let m = v.abs();
    if m != 0.0 && m.is_finite() && !(1e-5..1e16).contains(&m) {
        let _ = write!(out, "{v:e}");
    } else {
        let _ = write!(out, "{v}");
    }
}
