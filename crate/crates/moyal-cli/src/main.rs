//! `moyal` — star products, twisted algebras and their verification suites.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use moyal_cli::config::{Config, ThetaSpec};
use moyal_cli::{run_configured, star_command};

#[derive(Parser)]
#[command(name = "moyal", version, about = "Deformation-quantization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Star-multiply two polynomial expressions and print the result.
    Star {
        /// Left factor, e.g. "x1^2*x2 + 1/2".
        expr_a: String,
        /// Right factor.
        expr_b: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a verification suite and write reports.
    Suite {
        /// One of star-core, hopf, fock, numeric, landau, twoparticle, all.
        name: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Deformation parameter: a rational like 1/3 (planar form) or a
    /// row-major matrix like "0,1/2;-1/2,0".
    #[arg(long)]
    theta: Option<String>,
    /// Mode file: one momentum vector per line, rational components.
    #[arg(long)]
    modes: Option<PathBuf>,
    /// Grid points per axis (power of two).
    #[arg(long)]
    grid_n: Option<usize>,
    /// Grid box half-width.
    #[arg(long)]
    grid_l: Option<f64>,
    /// Output directory for reports and tables.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized identity checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of suite worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Configuration file (key = value lines), overridden by flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(common: &CommonArgs) -> anyhow::Result<Config> {
    let mut config = match &common.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Some(t) = &common.theta {
        config.theta = Some(ThetaSpec::parse(t)?);
    }
    if let Some(m) = &common.modes {
        config.modes_file = Some(m.clone());
    }
    if let Some(n) = common.grid_n {
        config.grid_n = n;
    }
    if let Some(l) = common.grid_l {
        config.grid_l = l;
    }
    if let Some(o) = &common.out {
        config.output_dir = Some(o.clone());
    }
    if let Some(s) = common.seed {
        config.seed = s;
    }
    if let Some(j) = common.jobs {
        config.jobs = j;
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Star {
            expr_a,
            expr_b,
            common,
        } => {
            let config = build_config(&common)?;
            println!("{}", star_command(&expr_a, &expr_b, &config)?);
            Ok(true)
        }
        Command::Suite { name, common } => {
            let mut config = build_config(&common)?;
            config.suites = name.split(',').map(|s| s.trim().to_string()).collect();
            config.validate()?;
            let reports = run_configured(&config)?;
            let mut all_passed = true;
            for report in &reports {
                print!("{}", report.render_text());
                all_passed &= report.all_passed();
            }
            Ok(all_passed)
        }
    }
}
