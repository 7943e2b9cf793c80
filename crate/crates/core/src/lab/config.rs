//! TOML experiment configuration with errors anchored to source lines.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::heisenberg::GeometryConfig;
use crate::nc_lp::SolverOptions;
use crate::spectral::geometric_grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    MeanErgodic,
    MaximalRatio,
    IndividualTail,
    EstimatesSuite,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::MeanErgodic => "mean-ergodic",
            ExperimentKind::MaximalRatio => "maximal-ratio",
            ExperimentKind::IndividualTail => "individual-tail",
            ExperimentKind::EstimatesSuite => "estimates-suite",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Where the random fields put their spectral mass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// `Sigma_{eps,N}`: `eps <= |lambda| <= N`, `k <= N`.
    Laguerre,
    /// `Sigma'_eps`: `eps <= u <= 1/eps` on the Bessel grid.
    Bessel,
    /// Both of the above.
    Mixed,
    Trivial,
}

/// An exponent `p` in `[1, inf]`, written as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PValue {
    Finite(f64),
    Named(NamedP),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedP {
    Inf,
}

impl PValue {
    pub fn value(self) -> f64 {
        match self {
            PValue::Finite(p) => p,
            PValue::Named(NamedP::Inf) => f64::INFINITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub n: usize,
    pub lambda_set: Vec<i64>,
    pub k_max: usize,
    pub rho_max: f64,
    pub radial_nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RGridSection {
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    #[serde(default)]
    pub count: Option<usize>,
    /// Explicit radii; overrides `min`, `max`, `count`.
    #[serde(default)]
    pub values: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub scenario: Scenario,
    pub epsilon: f64,
    pub big_n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub rel_tol: f64,
    pub max_iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub trials: usize,
    pub fiber_dim: usize,
    pub p_list: Vec<PValue>,
    pub format: OutputFormat,
    pub geometry: GeometrySection,
    pub r_grid: RGridSection,
    pub field: FieldSection,
    pub solver: SolverSection,
    /// Dyadic window starts for the tail experiment.
    #[serde(default = "default_windows")]
    pub windows: Vec<f64>,
    #[serde(default = "default_window_samples")]
    pub window_samples: usize,
    /// Checks run by the estimates suite; empty runs all registered checks.
    #[serde(default)]
    pub checks: Vec<String>,
}

fn default_windows() -> Vec<f64> {
    vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0]
}

fn default_window_samples() -> usize {
    8
}

impl ExperimentConfig {
    /// Built-in configuration for `kind`.
    pub fn default_for(kind: ExperimentKind) -> Self {
        let base = Self {
            experiment: kind,
            seed: 20240601,
            trials: 20,
            fiber_dim: 2,
            p_list: vec![PValue::Finite(2.0)],
            format: OutputFormat::Csv,
            geometry: GeometrySection { n: 2, lambda_set: vec![-2, -1, 1, 2], k_max: 8, rho_max: 12.0, radial_nodes: 24 },
            r_grid: RGridSection { min: Some(1e-3), max: Some(100.0), count: Some(64), values: None },
            field: FieldSection { scenario: Scenario::Laguerre, epsilon: 0.5, big_n: 8 },
            solver: SolverSection { rel_tol: 1e-7, max_iterations: 200_000 },
            windows: default_windows(),
            window_samples: default_window_samples(),
            checks: Vec::new(),
        };
        match kind {
            ExperimentKind::MeanErgodic => Self { trials: 50, ..base },
            ExperimentKind::MaximalRatio => Self {
                trials: 10,
                p_list: vec![PValue::Finite(1.0), PValue::Finite(2.0), PValue::Named(NamedP::Inf)],
                r_grid: RGridSection { min: Some(1e-3), max: Some(20.0), count: Some(16), values: None },
                ..base
            },
            ExperimentKind::IndividualTail => Self {
                trials: 4,
                fiber_dim: 1,
                geometry: GeometrySection {
                    n: 2,
                    lambda_set: vec![-8, -7, -6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7, 8],
                    k_max: 8,
                    rho_max: 10.0,
                    radial_nodes: 15,
                },
                field: FieldSection { scenario: Scenario::Mixed, epsilon: 0.5, big_n: 8 },
                ..base
            },
            ExperimentKind::EstimatesSuite => Self { trials: 1, ..base },
        }
    }

    pub fn parse(source: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(source).map_err(|e| {
            let line = e.span().map(|s| line_at(source, s.start)).unwrap_or(0);
            Error::Config { line, message: e.message().to_string() }
        })?;
        cfg.validate(source)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let source = std::fs::read_to_string(path).map_err(|e| Error::Config { line: 0, message: format!("{}: {e}", path.display()) })?;
        Self::parse(&source)
    }

    /// Semantic checks; `source` is used to anchor messages to lines.
    pub fn validate(&self, source: &str) -> Result<()> {
        let fail = |table: Option<&str>, key: &str, message: String| Error::Config { line: key_line(source, table, key), message };
        if self.trials == 0 {
            return Err(fail(None, "trials", "trials must be at least 1".into()));
        }
        if self.fiber_dim == 0 {
            return Err(fail(None, "fiber_dim", "fiber_dim must be at least 1".into()));
        }
        if self.p_list.is_empty() || self.p_list.iter().any(|p| !(p.value() >= 1.0)) {
            return Err(fail(None, "p_list", "p_list must be nonempty with every p >= 1".into()));
        }
        self.geometry().map_err(|e| fail(Some("geometry"), "n", e.to_string()))?;
        let radii = self.radii().map_err(|e| fail(Some("r_grid"), "min", e.to_string()))?;
        let f = &self.field;
        if !(f.epsilon > 0.0 && f.epsilon <= 1.0) {
            return Err(fail(Some("field"), "epsilon", "epsilon must lie in (0, 1]".into()));
        }
        if f.big_n == 0 {
            return Err(fail(Some("field"), "big_n", "big_n must be at least 1".into()));
        }
        if !(self.solver.rel_tol > 0.0) || self.solver.max_iterations == 0 {
            return Err(fail(Some("solver"), "rel_tol", "solver tolerances must be positive".into()));
        }
        let cells = self.geometry.radial_nodes * self.center_samples();
        let opts = self.solver_options();
        let needs_solver = matches!(self.experiment, ExperimentKind::MaximalRatio | ExperimentKind::IndividualTail);
        if needs_solver && self.fiber_dim * cells > opts.max_fiber_size {
            return Err(fail(
                Some("geometry"),
                "radial_nodes",
                format!(
                    "solver budget: fiber_dim * radial_nodes * center_samples = {} exceeds {}",
                    self.fiber_dim * cells,
                    opts.max_fiber_size
                ),
            ));
        }
        if self.experiment == ExperimentKind::MaximalRatio && radii.len() > opts.max_family {
            return Err(fail(Some("r_grid"), "count", format!("at most {} radii per family", opts.max_family)));
        }
        if self.experiment == ExperimentKind::IndividualTail {
            if self.windows.is_empty() || self.windows.iter().any(|&w| !(w > 0.0)) {
                return Err(fail(None, "windows", "windows must be positive".into()));
            }
            if self.window_samples < 2 || self.window_samples > opts.max_family {
                return Err(fail(None, "window_samples", format!("window_samples must lie in [2, {}]", opts.max_family)));
            }
        }
        Ok(())
    }

    pub fn center_samples(&self) -> usize {
        let m = self.geometry.lambda_set.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0) as usize;
        2 * m + 1
    }

    pub fn geometry(&self) -> Result<GeometryConfig> {
        let g = &self.geometry;
        GeometryConfig::new(g.n, &g.lambda_set, g.k_max, g.rho_max, g.radial_nodes)
    }

    pub fn radii(&self) -> Result<Vec<f64>> {
        let r = &self.r_grid;
        let radii = match &r.values {
            Some(v) => v.clone(),
            None => geometric_grid(r.min.unwrap_or(1e-3), r.max.unwrap_or(50.0), r.count.unwrap_or(64))?,
        };
        if radii.is_empty() || radii.iter().any(|&x| !(x > 0.0 && x.is_finite())) || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(crate::error::param("r_grid needs strictly increasing positive finite radii"));
        }
        Ok(radii)
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions { rel_tol: self.solver.rel_tol, max_iterations: self.solver.max_iterations, ..SolverOptions::default() }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// First 16 hex digits of the SHA-256 of the canonical TOML form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

fn line_at(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// 1-based line of `key = ...` inside `[table]` (or the top level), 0 if absent.
fn key_line(source: &str, table: Option<&str>, key: &str) -> usize {
    let mut current: Option<String> = None;
    for (i, line) in source.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('[') {
            current = Some(t.trim_matches(|c| c == '[' || c == ']').trim().to_string());
            continue;
        }
        let in_table = match (table, &current) {
            (None, None) => true,
            (Some(want), Some(have)) => want == have,
            _ => false,
        };
        if in_table && t.split('=').next().map(|k| k.trim()) == Some(key) && t.contains('=') {
            return i + 1;
        }
    }
    0
}
