//! Verification suites: each suite turns one area of the library into a
//! list of pass/fail checks with residuals, mirroring what the acceptance
//! tests assert.

mod fock;
mod hopf;
mod landau;
mod numeric;
mod star_core;
mod twoparticle;

use std::time::Instant;

use anyhow::{bail, Result};

use crate::config::Config;
use crate::report::Report;

pub use numeric::poly_gaussian_star_reference;

/// Runs one named suite.
pub fn run_suite(name: &str, config: &Config) -> Result<Report> {
    let start = Instant::now();
    let checks = match name {
        "star-core" => star_core::checks(config),
        "hopf" => hopf::checks(config)?,
        "fock" => fock::checks(config)?,
        "numeric" => numeric::checks(config)?,
        "landau" => landau::checks(config)?,
        "twoparticle" => twoparticle::checks(config)?,
        other => bail!("unknown suite '{other}'"),
    };
    let duration_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Report::new(name, config.seed, checks, duration_ms))
}

/// Runs the configured suites, sequentially or on `jobs` worker threads.
pub fn run_all(config: &Config) -> Result<Vec<Report>> {
    let names = config.resolved_suites();
    if config.jobs <= 1 || names.len() <= 1 {
        return names.iter().map(|n| run_suite(n, config)).collect();
    }
    let mut reports: Vec<Option<Report>> = (0..names.len()).map(|_| None).collect();
    let mut result: Result<()> = Ok(());
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (idx, name) in names.iter().enumerate() {
            let config = config.clone();
            handles.push((idx, scope.spawn(move || run_suite(name, &config))));
        }
        for (idx, handle) in handles {
            match handle.join() {
                Ok(Ok(report)) => reports[idx] = Some(report),
                Ok(Err(e)) => result = Err(e),
                Err(_) => result = Err(anyhow::anyhow!("suite thread panicked")),
            }
        }
    });
    result?;
    Ok(reports.into_iter().map(|r| r.expect("suite ran")).collect())
}
