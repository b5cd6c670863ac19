//! Row-major result tables and their CSV/JSON encodings. Floats use the
//! shortest representation that round-trips, so identical values give
//! identical bytes.

use serde_json::{json, Value};

use crate::config::Format;
use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(u64),
    S(String),
    B(bool),
    Empty,
}

impl Cell {
    pub fn opt_f(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::F)
    }

    fn text(&self) -> String {
        match self {
            Cell::F(x) => format!("{x:?}"),
            Cell::I(n) => n.to_string(),
            Cell::S(s) => s.clone(),
            Cell::B(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(x) if x.is_finite() => json!(x),
            Cell::F(_) | Cell::Empty => Value::Null,
            Cell::I(n) => json!(n),
            Cell::S(s) => json!(s),
            Cell::B(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::I(n as u64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::I(n)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::I(n as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::B(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::S(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_columns(name: &str, columns: Vec<String>) -> Self {
        Self {
            name: name.to_string(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> LabResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(LabError::numeric)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text)).map_err(LabError::numeric)?;
        }
        w.into_inner().map_err(|e| LabError::numeric(e.error()))
    }

    pub fn to_json(&self) -> LabResult<Vec<u8>> {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let mut out = serde_json::to_vec_pretty(&json!({ "columns": self.columns, "rows": rows })).map_err(LabError::numeric)?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn encode(&self, format: Format) -> LabResult<Artifact> {
        Ok(match format {
            Format::Csv => Artifact::new(format!("{}.csv", self.name), self.to_csv()?),
            Format::Json => Artifact::new(format!("{}.json", self.name), self.to_json()?),
        })
    }

    /// Like [`Table::encode`], but a JSON table is named `<name>_rows.json`
    /// so that `<name>.json` stays free for a sidecar.
    pub fn encode_with_sidecar(&self, format: Format) -> LabResult<Artifact> {
        Ok(match format {
            Format::Csv => self.encode(format)?,
            Format::Json => Artifact::new(format!("{}_rows.json", self.name), self.to_json()?),
        })
    }
}

/// One output file, held in memory until the run has finished.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn new(name: impl Into<String>, bytes: Vec<u8>) -> Self {
        Self { name: name.into(), bytes }
    }

    pub fn json(name: impl Into<String>, value: &Value) -> LabResult<Self> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(LabError::numeric)?;
        bytes.push(b'\n');
        Ok(Self::new(name, bytes))
    }
}

/// JSON number or null for non-finite values.
pub fn jnum(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn jopt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, jnum)
}
