//! Configuration-driven experiments: random fields, spherical-mean studies and
//! result emission.

pub mod config;
pub mod experiments;
pub mod model;
pub mod output;

use std::time::Instant;

pub use config::{ExperimentConfig, ExperimentKind, FieldSection, OutputFormat, PValue, Scenario};
pub use experiments::{Experiment, ExperimentRegistry, Outcome};
pub use model::{random_field, scenario_support, trial_rng};
pub use output::{manifest_path, write_outputs, Cell, Manifest, Provenance, Row, Table};

use crate::error::Result;

/// A finished run: the main table plus its manifest.
pub struct RunResult {
    pub table: Table,
    pub outcome: Outcome,
    pub manifest: Manifest,
}

/// Runs `cfg` on the current rayon pool.
pub fn run(cfg: &ExperimentConfig) -> Result<RunResult> {
    let start = Instant::now();
    let outcome = ExperimentRegistry::standard().run(cfg)?;
    let table = Table { provenance: Provenance::of(cfg), rows: outcome.rows.clone() };
    let manifest = Manifest {
        experiment: cfg.experiment.name().to_string(),
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: cfg.hash(),
        config: output::config_echo(cfg),
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        threads: rayon::current_num_threads(),
        bessel_asymptotic_switch: crate::special_fn::ASYMPTOTIC_SWITCH,
        verdicts: outcome.verdicts.clone(),
        solver_failures: outcome.solver_failures,
        notes: outcome.notes.clone(),
    };
    Ok(RunResult { table, outcome, manifest })
}
