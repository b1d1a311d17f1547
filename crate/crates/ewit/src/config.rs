//! Parameter grids and optimizer settings gathered from flags, the
//! environment and an optional TOML config file.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use ewit_core::{OptimizerConfig, StateParameter};
use serde::Deserialize;

use crate::{CliError, Result};

/// Default sweep grid.
pub const DEFAULT_GRID: &str = "0.1:0.9:0.1";

/// Either a single `a` or an inclusive `start:stop:step` range, all strictly
/// inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec(Vec<StateParameter>);

impl GridSpec {
    pub fn values(&self) -> &[StateParameter] {
        &self.0
    }

    /// The single value of a one-point grid.
    pub fn single(&self) -> Result<StateParameter> {
        match self.0.as_slice() {
            [p] => Ok(*p),
            _ => Err(CliError::Usage(format!(
                "--a: expected a single value, got a grid of {} points",
                self.0.len()
            ))),
        }
    }
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| CliError::Usage(format!("--a: malformed {what} `{s}`")))
}

fn parameter(a: f64) -> Result<StateParameter> {
    StateParameter::new(a).map_err(|_| CliError::Usage(format!("--a: {a} is not strictly inside (0, 1)")))
}

impl FromStr for GridSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => Ok(Self(vec![parameter(parse_number(single, "value")?)?])),
            [start, stop, step] => {
                let start = parse_number(start, "start")?;
                let stop = parse_number(stop, "stop")?;
                let step = parse_number(step, "step")?;
                if step <= 0.0 || stop < start {
                    return Err(CliError::Usage(format!(
                        "--a: grid `{s}` needs step > 0 and stop ≥ start"
                    )));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                (0..count)
                    .map(|k| {
                        // snap to 12 decimals so 0.1 + 2·0.1 prints as 0.3
                        let raw = start + k as f64 * step;
                        parameter((raw * 1e12).round() / 1e12)
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Self)
            }
            _ => Err(CliError::Usage(format!(
                "--a: expected `a` or `start:stop:step`, got `{s}`"
            ))),
        }
    }
}

/// Optional keys of the TOML config file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub starts: Option<usize>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub oracle_points: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| CliError::Config {
            path: path.to_owned(),
            source,
        })
    }
}

/// Optimizer overrides as given on the command line (seed may also come
/// from `EWIT_SEED`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OptimizerOverrides {
    pub starts: Option<usize>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub oracle_points: Option<usize>,
}

/// Flags win over the config file, which wins over the defaults.
pub fn resolve_optimizer(flags: &OptimizerOverrides, file: &ConfigFile) -> Result<OptimizerConfig> {
    let d = OptimizerConfig::default();
    let cfg = OptimizerConfig {
        n_starts: flags.starts.or(file.starts).unwrap_or(d.n_starts),
        max_iters: flags.max_iters.or(file.max_iters).unwrap_or(d.max_iters),
        conv_tol: flags.tol.or(file.tol).unwrap_or(d.conv_tol),
        rng_seed: flags.seed.or(file.seed).unwrap_or(d.rng_seed),
        oracle_points: flags.oracle_points.or(file.oracle_points).unwrap_or(d.oracle_points),
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_nine_points() {
        let g: GridSpec = DEFAULT_GRID.parse().unwrap();
        let a: Vec<f64> = g.values().iter().map(|p| p.a()).collect();
        assert_eq!(a, vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]);
    }

    #[test]
    fn malformed_grids() {
        for bad in ["", "x", "0.1:0.9", "0.1:0.9:0", "0.9:0.1:0.1", "0:0.5:0.1", "0.5:1.0:0.1", "1.2"] {
            assert!(matches!(bad.parse::<GridSpec>(), Err(CliError::Usage(_))), "{bad}");
        }
        assert!("0.5".parse::<GridSpec>().unwrap().single().is_ok());
        assert!(DEFAULT_GRID.parse::<GridSpec>().unwrap().single().is_err());
    }

    #[test]
    fn precedence() {
        let file = ConfigFile {
            starts: Some(7),
            seed: Some(9),
            ..ConfigFile::default()
        };
        let flags = OptimizerOverrides {
            seed: Some(1),
            ..OptimizerOverrides::default()
        };
        let cfg = resolve_optimizer(&flags, &file).unwrap();
        assert_eq!((cfg.n_starts, cfg.rng_seed, cfg.max_iters), (7, 1, 500));
        let bad = OptimizerOverrides {
            starts: Some(0),
            ..OptimizerOverrides::default()
        };
        assert!(resolve_optimizer(&bad, &ConfigFile::default()).is_err());
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        assert!(toml::from_str::<ConfigFile>("starts = 3\nseed = 4").is_ok());
        assert!(toml::from_str::<ConfigFile>("speed = 3").is_err());
    }
}
