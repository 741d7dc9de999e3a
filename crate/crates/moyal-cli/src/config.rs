//! Run configuration: a simple `key = value` file overridden by flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use num_rational::BigRational;

use moyal_core::hopf::ModeBasis;
use moyal_core::scalar::parse_rational;
use moyal_core::ThetaMatrix;

pub const SUITE_NAMES: [&str; 6] = [
    "star-core",
    "hopf",
    "fock",
    "numeric",
    "landau",
    "twoparticle",
];

/// Deformation input: a scalar (the planar `t * eps` form) or a full matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaSpec {
    Scalar(BigRational),
    Matrix(Vec<Vec<BigRational>>),
}

impl ThetaSpec {
    /// Parses `1/3` or a row-major matrix `0,1/2;-1/2,0`.
    pub fn parse(text: &str) -> Result<ThetaSpec> {
        let text = text.trim();
        if text.contains(';') || text.contains(',') {
            let rows: Vec<Vec<BigRational>> = text
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|cell| {
                            parse_rational(cell)
                                .ok_or_else(|| anyhow!("invalid rational entry '{cell}'"))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            Ok(ThetaSpec::Matrix(rows))
        } else {
            Ok(ThetaSpec::Scalar(
                parse_rational(text).ok_or_else(|| anyhow!("invalid rational '{text}'"))?,
            ))
        }
    }

    /// Realizes the deformation matrix in `dim` variables. A scalar becomes
    /// `t * eps` on each consecutive coordinate pair (requires even `dim`).
    pub fn matrix(&self, dim: usize) -> Result<ThetaMatrix> {
        match self {
            ThetaSpec::Scalar(t) => {
                if dim % 2 != 0 {
                    bail!("scalar theta needs an even number of coordinates, got {dim}");
                }
                let upper: Vec<(usize, usize, BigRational)> = (0..dim / 2)
                    .map(|pair| (2 * pair, 2 * pair + 1, t.clone()))
                    .collect();
                ThetaMatrix::from_upper(dim, &upper).map_err(|e| anyhow!(e))
            }
            ThetaSpec::Matrix(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    bail!("theta matrix must be {dim}x{dim}");
                }
                let entries = rows.iter().flatten().cloned().collect();
                ThetaMatrix::new(dim, entries).map_err(|e| anyhow!(e))
            }
        }
    }
}

/// Everything a suite run needs.
#[derive(Clone, Debug)]
pub struct Config {
    pub theta: Option<ThetaSpec>,
    pub modes_file: Option<PathBuf>,
    pub grid_n: usize,
    pub grid_l: f64,
    pub suites: Vec<String>,
    pub output_dir: Option<PathBuf>,
    pub seed: u64,
    pub jobs: usize,
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            theta: None,
            modes_file: None,
            grid_n: 64,
            grid_l: 8.0,
            suites: vec!["all".into()],
            output_dir: None,
            seed: 0,
            jobs: 1,
            tolerance_overrides: BTreeMap::new(),
        }
    }
}

impl Config {
    /// Reads a `key = value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut config = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", lineno + 1))?;
            config
                .set(key.trim(), value.trim())
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "theta" => self.theta = Some(ThetaSpec::parse(value)?),
            "modes" | "modes_file" => self.modes_file = Some(PathBuf::from(value)),
            "grid_n" => self.grid_n = value.parse().context("grid_n")?,
            "grid_l" => self.grid_l = value.parse().context("grid_l")?,
            "suite" | "suites" => {
                self.suites = value.split(',').map(|s| s.trim().to_string()).collect()
            }
            "out" | "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            "seed" => self.seed = value.parse().context("seed")?,
            "jobs" => self.jobs = value.parse().context("jobs")?,
            _ => {
                if let Some(suite) = key.strip_prefix("tol.") {
                    let tol: f64 = value.parse().context("tolerance")?;
                    self.tolerance_overrides.insert(suite.to_string(), tol);
                } else {
                    bail!("unknown config key '{key}'");
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.suites {
            if s != "all" && !SUITE_NAMES.contains(&s.as_str()) {
                bail!(
                    "unknown suite '{}'; expected one of {} or all",
                    s,
                    SUITE_NAMES.join(", ")
                );
            }
        }
        for (suite, tol) in &self.tolerance_overrides {
            if !SUITE_NAMES.contains(&suite.as_str()) {
                bail!("tolerance override for unknown suite '{suite}'");
            }
            if !(tol > &0.0) {
                bail!("tolerance for '{suite}' must be positive, got {tol}");
            }
        }
        if self.jobs == 0 {
            bail!("jobs must be at least 1");
        }
        if !self.grid_n.is_power_of_two() {
            bail!("grid_n must be a power of two, got {}", self.grid_n);
        }
        if !(self.grid_l > 0.0) {
            bail!("grid_l must be positive");
        }
        Ok(())
    }

    /// The suites to run, with `all` expanded.
    pub fn resolved_suites(&self) -> Vec<String> {
        if self.suites.iter().any(|s| s == "all") {
            SUITE_NAMES.iter().map(|s| s.to_string()).collect()
        } else {
            self.suites.clone()
        }
    }

    pub fn tolerance_for(&self, suite: &str, default: f64) -> f64 {
        self.tolerance_overrides
            .get(suite)
            .copied()
            .unwrap_or(default)
    }

    /// Loads the mode basis from file, or a built-in three-mode default.
    pub fn load_modes(&self) -> Result<ModeBasis> {
        match &self.modes_file {
            Some(path) => read_modes_file(path),
            None => Ok(default_modes()),
        }
    }
}

/// Built-in planar mode set used when no file is given.
pub fn default_modes() -> ModeBasis {
    ModeBasis::new(
        2,
        vec![
            vec![
                BigRational::from_integer(1.into()),
                BigRational::from_integer(0.into()),
            ],
            vec![
                BigRational::from_integer(0.into()),
                BigRational::from_integer(1.into()),
            ],
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 3.into()),
            ],
        ],
    )
    .expect("built-in modes are valid")
}

/// Reads one momentum vector per line, rational components separated by
/// whitespace or commas; `#` starts a comment.
pub fn read_modes_file(path: &Path) -> Result<ModeBasis> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading modes {}", path.display()))?;
    let mut momenta: Vec<Vec<BigRational>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let components: Vec<BigRational> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                parse_rational(s)
                    .ok_or_else(|| anyhow!("line {}: invalid rational '{s}'", lineno + 1))
            })
            .collect::<Result<_>>()?;
        if !components.is_empty() {
            momenta.push(components);
        }
    }
    let dim = momenta.first().map(|p| p.len()).unwrap_or(0);
    ModeBasis::new(dim, momenta).map_err(|e| anyhow!("invalid mode set: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_theta_forms() {
        let s = ThetaSpec::parse("1/3").unwrap();
        let m = s.matrix(2).unwrap();
        assert_eq!(m.get(0, 1), &BigRational::new(1.into(), 3.into()));

        let full = ThetaSpec::parse("0,1/2;-1/2,0").unwrap();
        let m2 = full.matrix(2).unwrap();
        assert_eq!(m2.get(1, 0), &BigRational::new((-1).into(), 2.into()));

        assert!(ThetaSpec::parse("0,1;1,0").unwrap().matrix(2).is_err());
    }

    #[test]
    fn config_file_round_trip() {
        let dir = std::env::temp_dir().join("moyal-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(
            &path,
            "# sample\ntheta = 1/2\ngrid_n = 32\nsuites = landau, fock\nseed = 7\ntol.fock = 1e-10\n",
        )
        .unwrap();
        let config = Config::from_file(&path).unwrap();
        assert_eq!(config.grid_n, 32);
        assert_eq!(config.seed, 7);
        assert_eq!(config.suites, vec!["landau", "fock"]);
        assert_eq!(config.tolerance_for("fock", 1e-12), 1e-10);
        assert_eq!(config.tolerance_for("landau", 1e-12), 1e-12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut c = Config::default();
        c.suites = vec!["bogus".into()];
        assert!(c.validate().is_err());

        let mut c = Config::default();
        c.tolerance_overrides.insert("fock".into(), -1.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn modes_file_parsing() {
        let dir = std::env::temp_dir().join("moyal-modes-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("modes.txt");
        std::fs::write(&path, "1 0\n0 1\n1/2, 1/3 # comment\n").unwrap();
        let modes = read_modes_file(&path).unwrap();
        assert_eq!(modes.len(), 3);
        assert_eq!(modes.dim(), 2);
        assert_eq!(modes.momentum(2)[1], BigRational::new(1.into(), 3.into()));
    }
}
