//! Command-line front end: expression parsing, suite orchestration and
//! report emission.

pub mod config;
pub mod expr;
pub mod report;
pub mod suites;

use std::path::Path;

use anyhow::{Context, Result};

use config::Config;
use report::Report;

/// Parses two expressions over a shared layout, star-multiplies them and
/// returns the canonical printed result.
pub fn star_command(expr_a: &str, expr_b: &str, config: &Config) -> Result<String> {
    let (polys, layout) = expr::parse_expressions(&[expr_a, expr_b])?;
    // widen to an even variable count of at least two so a scalar theta applies
    let mut coordinates = layout.coordinates.max(2);
    if (coordinates * layout.particles) % 2 != 0 {
        coordinates += 1;
    }
    let wide = expr::VarLayout {
        coordinates,
        particles: layout.particles,
    };
    let nvars = wide.nvars();
    let embed = |p: &moyal_core::PolyExpr| -> moyal_core::PolyExpr {
        let mut out = moyal_core::PolyExpr::zero(nvars);
        for (e, c) in p.terms() {
            let mut exps = vec![0u32; nvars];
            for (flat, &exp) in e.exps().iter().enumerate() {
                let name = layout.name(flat);
                exps[wide.flat_index(&name)] = exp;
            }
            out.add_term(moyal_core::MultiIndex::new(exps), c.clone());
        }
        out
    };
    let a = embed(&polys[0]);
    let b = embed(&polys[1]);
    let theta = match &config.theta {
        Some(spec) => spec.matrix(nvars)?,
        None => moyal_core::ThetaMatrix::zero(nvars),
    };
    let product = moyal_core::moyal_star(&a, &b, &theta)?;
    Ok(expr::print_poly(&product, &wide))
}

/// Runs the configured suites and writes reports; returns them in order.
pub fn run_configured(config: &Config) -> Result<Vec<Report>> {
    let reports = suites::run_all(config)?;
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        for report in &reports {
            write_report(dir, report)?;
        }
    }
    Ok(reports)
}

fn write_report(dir: &Path, report: &Report) -> Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(dir.join(format!("{}.json", report.suite)), json)?;
    std::fs::write(
        dir.join(format!("{}.txt", report.suite)),
        report.render_text(),
    )?;
    Ok(())
}
