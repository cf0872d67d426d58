//! Reports: exact verdict fields, numerical diagnostic fields and one
//! table, written as sorted-key JSON and as CSV with a config-hash footer.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub task: String,
    pub config_hash: String,
    pub verdict: Map<String, Value>,
    pub diagnostic: Map<String, Value>,
    pub table: Table,
}

/// Converts a serializable value into a JSON value.
pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn to_json(&self) -> String {
        // serde_json maps are ordered by key, so output keys are sorted.
        let v = json!({
            "task": self.task,
            "config_hash": self.config_hash,
            "verdict": Value::Object(self.verdict.clone()),
            "diagnostic": Value::Object(self.diagnostic.clone()),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let line = |cells: &[String]| cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
        out.push_str(&line(&self.table.header));
        out.push('\n');
        for row in &self.table.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        let _ = writeln!(out, "# config-hash: {}", self.config_hash);
        out
    }

    pub fn write(&self, json_path: &Path, csv_path: &Path) -> Result<(), CliError> {
        for (path, body) in [(json_path, self.to_json()), (csv_path, self.to_csv())] {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
            }
            std::fs::write(path, body).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
