//! `lab`: runs the configured experiments and estimate checks.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use heisenberg_lab::error::Error;
use heisenberg_lab::estimates::CheckRegistry;
use heisenberg_lab::lab::{self, ExperimentConfig, ExperimentKind, OutputFormat};

const EXIT_CONFIG: u8 = 1;
const EXIT_CHECK: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "lab", version, about = "Spherical-mean experiments on the reduced Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML configuration; built-in defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; a manifest is written to `<out>.manifest.json`. Stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, env = "LAB_THREADS")]
    threads: Option<usize>,
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decay of spherical means towards the fixed-point part.
    MeanErgodic,
    /// Maximal-norm ratios over the r-grid.
    MaximalRatio,
    /// Maximal norms over dyadic windows of large radii.
    IndividualTail,
    /// Runs one registered estimate check; `list` prints the names and `all`
    /// runs the estimates suite.
    Estimates { check: String },
    /// Quick end-to-end sanity run.
    Selftest,
}

fn config_for(kind: ExperimentKind, common: &Common) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default_for(kind),
    };
    if cfg.experiment != kind {
        return Err(Error::Config {
            line: 0,
            message: format!("config is for `{}` but the subcommand is `{kind}`", cfg.experiment),
        });
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(f) = common.format {
        cfg.format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    Ok(cfg)
}

fn emit(common: &Common, body: &str, manifest: &lab::Manifest) -> Result<(), Error> {
    match &common.out {
        Some(path) => lab::write_outputs(path, body, manifest),
        None => {
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn run_experiment(kind: ExperimentKind, common: &Common) -> Result<u8, Error> {
    let cfg = config_for(kind, common)?;
    info!("running {kind} with config hash {}", cfg.hash());
    let result = lab::run(&cfg)?;
    emit(common, &result.table.render(cfg.format), &result.manifest)?;
    for note in &result.outcome.notes {
        warn!("{note}");
    }
    for (name, pass) in &result.outcome.verdicts {
        eprintln!("{} {name}", if *pass { "PASS" } else { "FAIL" });
    }
    Ok(if result.outcome.solver_failures > 0 {
        EXIT_SOLVER
    } else if !result.outcome.passed() {
        EXIT_CHECK
    } else {
        0
    })
}

fn run_check(name: &str, common: &Common) -> Result<u8, Error> {
    let registry = CheckRegistry::standard();
    if name == "list" {
        let mut out = std::io::stdout().lock();
        for c in registry.iter() {
            if writeln!(out, "{:<22} {}", c.name(), c.summary()).is_err() {
                break;
            }
        }
        return Ok(0);
    }
    let check = registry.get(name).ok_or_else(|| Error::Config {
        line: 0,
        message: format!("unknown check `{name}`; known: {}", registry.names().join(", ")),
    })?;
    let start = std::time::Instant::now();
    let report = check.run()?;
    let body = match common.format {
        Some(Format::Json) => serde_json::to_string_pretty(&report)? + "\n",
        _ => report.to_csv()?,
    };
    let manifest = lab::Manifest {
        experiment: format!("estimates/{name}"),
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: String::new(),
        config: serde_json::Value::Null,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        threads: rayon::current_num_threads(),
        bessel_asymptotic_switch: heisenberg_lab::special_fn::ASYMPTOTIC_SWITCH,
        verdicts: [(name.to_string(), report.pass)].into_iter().collect(),
        solver_failures: 0,
        notes: report.notes.clone(),
    };
    emit(common, &body, &manifest)?;
    eprintln!("{} {name}", if report.pass { "PASS" } else { "FAIL" });
    Ok(if report.pass { 0 } else { EXIT_CHECK })
}

/// Small versions of each experiment plus the fast estimate checks.
fn selftest() -> Result<u8, Error> {
    let mut failed = false;
    let mut report = |name: &str, pass: bool| {
        println!("{} {name}", if pass { "PASS" } else { "FAIL" });
        failed |= !pass;
    };
    let registry = CheckRegistry::standard();
    for name in ["laguerre-connection", "comparison", "asymptotics", "psi-subordination"] {
        let pass = registry.get(name).map(|c| c.run().map(|r| r.pass).unwrap_or(false)).unwrap_or(false);
        report(name, pass);
    }
    let mut cfg = ExperimentConfig::default_for(ExperimentKind::MeanErgodic);
    cfg.trials = 2;
    let r = lab::run(&cfg)?;
    report("mean-ergodic", r.outcome.passed());
    let mut cfg = ExperimentConfig::default_for(ExperimentKind::MaximalRatio);
    cfg.trials = 1;
    cfg.r_grid.count = Some(6);
    let r = lab::run(&cfg)?;
    report("maximal-ratio", r.outcome.passed() && r.outcome.solver_failures == 0);
    Ok(if failed { EXIT_CHECK } else { 0 })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config { .. } | Error::Io(_) => EXIT_CONFIG,
        Error::NonConvergence { .. } => EXIT_SOLVER,
        _ => EXIT_CHECK,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.common.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(t) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let result = match &cli.command {
        Command::MeanErgodic => run_experiment(ExperimentKind::MeanErgodic, &cli.common),
        Command::MaximalRatio => run_experiment(ExperimentKind::MaximalRatio, &cli.common),
        Command::IndividualTail => run_experiment(ExperimentKind::IndividualTail, &cli.common),
        Command::Estimates { check } if check == "all" => run_experiment(ExperimentKind::EstimatesSuite, &cli.common),
        Command::Estimates { check } => run_check(check, &cli.common),
        Command::Selftest => selftest(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
