//! Tabular datasets and their CSV / JSON serializations.
//!
//! Both encodings are deterministic: CSV numbers are written in scientific
//! notation with 17 significant digits, JSON numbers use the shortest string
//! that round-trips to the same double, object keys are sorted, and lines end
//! in `\n`.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// Version string embedded in every JSON document.
pub const FORMAT_VERSION: &str = concat!("unitary-density ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A single table entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Column-labelled rows plus free-form metadata and the run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub config: Value,
    pub metadata: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            config: Value::Null,
            metadata: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn with_config(mut self, config: Value) -> Self {
        self.config = config;
        self
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("metadata serializes");
        self.metadata.insert(key.to_string(), v);
    }

    /// Numeric column by name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        self.rows
            .iter()
            .map(|r| match r[idx] {
                Cell::Num(v) => Some(v),
                Cell::Int(v) => Some(v as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Num(v) => {
                        let _ = write!(out, "{v:.16e}");
                    }
                    Cell::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Text(s) => out.push_str(s),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut obj = self.metadata.clone();
        obj.insert("version".into(), Value::from(FORMAT_VERSION));
        obj.insert("config".into(), self.config.clone());
        obj.insert(
            "columns".into(),
            Value::from(self.columns.iter().map(|c| Value::from(c.as_str())).collect::<Vec<_>>()),
        );
        obj.insert(
            "rows".into(),
            serde_json::to_value(&self.rows).expect("rows serialize"),
        );
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["x", "value"]);
        t.push(vec![0.1.into(), (1.0 / 3.0).into()]);
        t.push(vec![(-2.5).into(), 0.0.into()]);
        t.meta("method", "exact_kernel");
        t.with_config(serde_json::json!({"n": 10}))
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,value");
        assert_eq!(lines[1], "1.0000000000000001e-1,3.3333333333333331e-1");
        assert_eq!(lines[2], "-2.5000000000000000e0,0.0000000000000000e0");
        assert!(csv.ends_with("e0\n"));
        // 17 significant digits survive a round trip
        let back: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn json_layout() {
        let json = sample().to_json();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["version"], FORMAT_VERSION);
        assert_eq!(v["config"]["n"], 10);
        assert_eq!(v["columns"][1], "value");
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(v["method"], "exact_kernel");
        assert_eq!(json, sample().to_json());
    }

    #[test]
    fn column_lookup() {
        let t = sample();
        assert_eq!(t.column("x").unwrap(), vec![0.1, -2.5]);
        assert!(t.column("missing").is_none());
    }
}
