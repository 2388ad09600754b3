//! Named experiments over a parameter grid, collected into a [`Report`].

pub mod config;
pub mod experiments;
pub mod report;

use std::time::Instant;

use rayon::prelude::*;

pub use config::ExperimentConfig;
pub use report::{ExperimentReport, Provenance, Record, Report, Status};

use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "ALUTHGE_THREADS";

fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Error::Config(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))
        })?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Config(e.to_string()))
}

/// Runs one experiment by name.
pub fn run_experiment(name: &str, cfg: &ExperimentConfig) -> Option<ExperimentReport> {
    experiments::EXPERIMENTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, f)| ExperimentReport {
            name: n.to_string(),
            records: f(cfg),
        })
}

/// Runs every experiment. Failures inside an experiment become error records.
pub fn run_all(cfg: &ExperimentConfig) -> Result<Report> {
    run_selected(
        cfg,
        &experiments::EXPERIMENTS
            .iter()
            .map(|(n, _)| *n)
            .collect::<Vec<_>>(),
    )
}

pub fn run_selected(cfg: &ExperimentConfig, names: &[&str]) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = pool()?;
    let chosen: Vec<_> = experiments::EXPERIMENTS
        .iter()
        .filter(|(n, _)| names.contains(n))
        .collect();
    let threads = pool.current_num_threads();
    let reports: Vec<ExperimentReport> = pool.install(|| {
        chosen
            .into_par_iter()
            .map(|(n, f)| ExperimentReport {
                name: n.to_string(),
                records: f(cfg),
            })
            .collect()
    });
    Ok(Report::new(
        cfg.clone(),
        reports,
        start.elapsed().as_secs_f64(),
        threads,
    ))
}
