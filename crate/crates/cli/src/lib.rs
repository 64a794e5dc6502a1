//! Command-line driver: parses flags, prepares the cache, runs the requested
//! experiments and writes one report per experiment plus `manifest.json`.
//!
//! Exit status is 0 when every hard and identity row passes, 1 when one
//! fails or an experiment errors, 2 on argument errors.

pub mod args;
pub mod cache;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use zeta_ladder::experiments::{
    run_baselines, run_selfcheck, run_theorem1, run_theorem2, run_theorem3, spec_hash, Context, ExperimentConfig, Report,
};

pub use args::{Args, Experiment, Format, CACHE_ENV};
use cache::CacheReport;

/// Manifest file name inside the output directory.
pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Serialize)]
struct ExperimentEntry {
    id: &'static str,
    file: Option<PathBuf>,
    rows: usize,
    wall_time_s: f64,
    hard_pass: bool,
    failures: Vec<String>,
    error: Option<String>,
    notes: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    args: Args,
    config: ExperimentConfig,
    quad_hash: String,
    ladder_hash: String,
    bands_hash: String,
    cache: Option<CacheReport>,
    oracle_max_diff: Option<f64>,
    experiments: Vec<ExperimentEntry>,
    failures: Vec<String>,
    wall_time_s: f64,
}

enum Failure {
    Usage(String),
    Run(String),
}

fn config_from(args: &Args) -> Result<ExperimentConfig, Failure> {
    let mut cfg = ExperimentConfig {
        epsilon: args.epsilon,
        ..ExperimentConfig::default()
    };
    if let Some(order) = args.terms {
        cfg = cfg.with_correction_order(order);
    }
    if let Some(p) = args.panels_per_osc {
        cfg.quad.panels_per_oscillation = p;
    }
    if let Some(tol) = args.tol {
        cfg.quad.refine_tol = tol;
    }
    for b in &args.band_overrides {
        cfg.bands
            .set(&b.key, (b.lo, b.hi))
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(cfg)
}

fn run_one(ctx: &Context, args: &Args, exp: Experiment) -> zeta_ladder::Result<Report> {
    match exp {
        Experiment::Thm1 => run_theorem1(ctx, args.x, args.y()),
        Experiment::Thm2 => run_theorem2(ctx, args.x),
        Experiment::Thm3 => run_theorem3(ctx, args.x, args.y()),
        Experiment::Baselines => run_baselines(ctx, &args.x_grid),
        Experiment::Selfcheck => run_selfcheck(ctx),
    }
}

fn write_report(report: &Report, path: &PathBuf, format: Format) -> std::io::Result<()> {
    let w = BufWriter::new(File::create(path)?);
    match format {
        Format::Csv => output::write_csv(report, w),
        Format::Json => output::write_json(report, w),
    }
}

fn execute(args: Args) -> Result<Manifest, Failure> {
    let start = Instant::now();
    let cfg = config_from(&args)?;
    let ctx = Context::new(args.t, cfg.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
    fs::create_dir_all(&args.out).map_err(|e| Failure::Run(format!("{}: {e}", args.out.display())))?;

    let mut experiments = args.experiment.clone();
    experiments.dedup();
    let need_window = experiments
        .iter()
        .any(|e| matches!(e, Experiment::Thm1 | Experiment::Baselines));
    let cache = cache::prepare(&ctx, args.cache_dir.as_deref(), true, need_window).map_err(|e| Failure::Run(e.to_string()))?;

    let mut entries = Vec::new();
    let mut failures = Vec::new();
    let mut oracle_max_diff = None;
    for exp in experiments {
        let t0 = Instant::now();
        let mut entry = ExperimentEntry {
            id: exp.id(),
            file: None,
            rows: 0,
            wall_time_s: 0.0,
            hard_pass: false,
            failures: Vec::new(),
            error: None,
            notes: BTreeMap::new(),
        };
        match run_one(&ctx, &args, exp) {
            Ok(report) => {
                let path = args.out.join(format!("{}.{}", exp.id(), args.format.extension()));
                if let Err(e) = write_report(&report, &path, args.format) {
                    entry.error = Some(format!("{}: {e}", path.display()));
                }
                entry.file = Some(path);
                entry.rows = report.rows.len();
                entry.hard_pass = report.hard_pass();
                entry.failures = report.fatal_failures().map(|r| r.label.clone()).collect();
                entry.notes = report
                    .rows
                    .iter()
                    .filter(|r| !r.note.is_empty())
                    .map(|r| (r.label.clone(), r.note.clone()))
                    .collect();
                if let Some(r) = report.row("selfcheck_oracle_max_diff") {
                    oracle_max_diff = Some(r.lhs);
                }
            }
            Err(e) => entry.error = Some(e.to_string()),
        }
        entry.wall_time_s = t0.elapsed().as_secs_f64();
        failures.extend(entry.failures.iter().map(|l| format!("{}: {l}", entry.id)));
        if let Some(e) = &entry.error {
            failures.push(format!("{}: error: {e}", entry.id));
        }
        entries.push(entry);
    }

    let manifest = Manifest {
        tool: "zeta-ladder",
        version: env!("CARGO_PKG_VERSION"),
        quad_hash: spec_hash(&cfg.quad),
        ladder_hash: spec_hash(&cfg.ladder),
        bands_hash: spec_hash(&cfg.bands),
        config: cfg,
        args,
        cache: Some(cache),
        oracle_max_diff,
        experiments: entries,
        failures,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    let path = manifest.args.out.join(MANIFEST);
    let written = File::create(&path)
        .and_then(|f| serde_json::to_writer_pretty(BufWriter::new(f), &manifest).map_err(std::io::Error::from));
    written.map_err(|e| Failure::Run(format!("{}: {e}", path.display())))?;
    Ok(manifest)
}

/// Runs the tool on an argument list (program name first) and returns the
/// exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match args.workers {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: worker pool: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(args)) {
        Ok(m) if m.failures.is_empty() => 0,
        Ok(m) => {
            for f in &m.failures {
                eprintln!("failed: {f}");
            }
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
