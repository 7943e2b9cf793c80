//! Result tables (CSV or JSON) and run manifests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::{ExperimentConfig, OutputFormat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Num(f64),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) if x.is_finite() => format!("{x:e}"),
            Cell::Num(x) => x.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => json!(i),
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => Value::String(x.to_string()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// Long-format result row.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    /// Trial index, or `None` for aggregates over trials.
    pub trial: Option<usize>,
    pub statistic: String,
    pub param: String,
    pub param_value: Cell,
    pub value: Cell,
    pub status: String,
}

impl Row {
    pub fn new(trial: Option<usize>, statistic: &str, param: &str, param_value: impl Into<Cell>, value: impl Into<Cell>) -> Self {
        Self {
            trial,
            statistic: statistic.to_string(),
            param: param.to_string(),
            param_value: param_value.into(),
            value: value.into(),
            status: "ok".into(),
        }
    }

    pub fn status(mut self, s: &str) -> Self {
        self.status = s.to_string();
        self
    }
}

pub const COLUMNS: [&str; 16] = [
    "experiment",
    "trial",
    "statistic",
    "param",
    "param_value",
    "value",
    "status",
    "config_hash",
    "seed",
    "n",
    "fiber_dim",
    "radial_nodes",
    "center_samples",
    "r_count",
    "solver_rel_tol",
    "solver_max_iterations",
];

/// Configuration columns repeated on every row.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub experiment: String,
    pub config_hash: String,
    pub seed: u64,
    pub n: usize,
    pub fiber_dim: usize,
    pub radial_nodes: usize,
    pub center_samples: usize,
    pub r_count: usize,
    pub solver_rel_tol: f64,
    pub solver_max_iterations: usize,
}

impl Provenance {
    pub fn of(cfg: &ExperimentConfig) -> Self {
        Self {
            experiment: cfg.experiment.name().to_string(),
            config_hash: cfg.hash(),
            seed: cfg.seed,
            n: cfg.geometry.n,
            fiber_dim: cfg.fiber_dim,
            radial_nodes: cfg.geometry.radial_nodes,
            center_samples: cfg.center_samples(),
            r_count: cfg.radii().map(|r| r.len()).unwrap_or(0),
            solver_rel_tol: cfg.solver.rel_tol,
            solver_max_iterations: cfg.solver.max_iterations,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub provenance: Provenance,
    pub rows: Vec<Row>,
}

impl Table {
    fn cells(&self, row: &Row) -> Vec<Cell> {
        let p = &self.provenance;
        vec![
            Cell::Text(p.experiment.clone()),
            row.trial.map_or(Cell::Text("all".into()), |t| Cell::Int(t as i64)),
            Cell::Text(row.statistic.clone()),
            Cell::Text(row.param.clone()),
            row.param_value.clone(),
            row.value.clone(),
            Cell::Text(row.status.clone()),
            Cell::Text(p.config_hash.clone()),
            Cell::Text(p.seed.to_string()),
            Cell::Int(p.n as i64),
            Cell::Int(p.fiber_dim as i64),
            Cell::Int(p.radial_nodes as i64),
            Cell::Int(p.center_samples as i64),
            Cell::Int(p.r_count as i64),
            Cell::Num(p.solver_rel_tol),
            Cell::Int(p.solver_max_iterations as i64),
        ]
    }

    /// RFC 4180 with a header row and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(COLUMNS).expect("in-memory write");
        for row in &self.rows {
            w.write_record(self.cells(row).iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (k, c) in COLUMNS.iter().zip(self.cells(row)) {
                    m.insert(k.to_string(), c.json());
                }
                Value::Object(m)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub experiment: String,
    pub library_version: String,
    pub config_hash: String,
    pub config: Value,
    pub wall_clock_seconds: f64,
    pub threads: usize,
    /// Argument `ur` above which Bessel functions use the large-argument expansion.
    pub bessel_asymptotic_switch: f64,
    pub verdicts: BTreeMap<String, bool>,
    pub solver_failures: usize,
    pub notes: Vec<String>,
}

/// `<out>.manifest.json` next to the main output.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn config_echo(cfg: &ExperimentConfig) -> Value {
    serde_json::to_value(cfg).unwrap_or(Value::Null)
}

pub fn write_outputs(out: &Path, body: &str, manifest: &Manifest) -> Result<()> {
    std::fs::write(out, body)?;
    let text = serde_json::to_string_pretty(manifest).map_err(|e| Error::Format(e.to_string()))?;
    std::fs::write(manifest_path(out), text + "\n")?;
    Ok(())
}
