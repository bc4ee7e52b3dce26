//! JSON run configuration.

use crate::error::CliError;
use fracharvest_core::ScenarioParams;
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

pub const DEFAULT_GRID_POINTS: usize = 10_000;
pub const MIN_GRID_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Classical,
    Fractional,
    Compare,
    NoHarvest,
    CrossPolicy,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Classical,
        Experiment::Fractional,
        Experiment::Compare,
        Experiment::NoHarvest,
        Experiment::CrossPolicy,
    ];
}

/// On-disk layout: one flat object.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    r: f64,
    #[serde(rename = "K")]
    k: f64,
    delta: f64,
    #[serde(rename = "T")]
    horizon: f64,
    x0: f64,
    #[serde(rename = "xT")]
    x_t: f64,
    h_min: f64,
    h_max: f64,
    alpha: f64,
    grid_points: Option<usize>,
    experiments: Option<Vec<Experiment>>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioParams,
    pub alpha: f64,
    /// Number of grid intervals on `[0, T]`.
    pub grid_points: usize,
    pub experiments: BTreeSet<Experiment>,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn from_json(text: &str, path: &Path) -> Result<Self, CliError> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|source| CliError::ParseConfig {
                path: path.to_path_buf(),
                source,
            })?;
        Ok(RunConfig {
            scenario: ScenarioParams {
                r: raw.r,
                k: raw.k,
                delta: raw.delta,
                horizon: raw.horizon,
                x0: raw.x0,
                x_t: raw.x_t,
                h_min: raw.h_min,
                h_max: raw.h_max,
            },
            alpha: raw.alpha,
            grid_points: raw.grid_points.unwrap_or(DEFAULT_GRID_POINTS),
            experiments: match raw.experiments {
                Some(list) => list.into_iter().collect(),
                None => Experiment::ALL.into_iter().collect(),
            },
            output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from("output")),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text, path)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.scenario.validate()?;
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(CliError::Config(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return Err(CliError::Config(format!(
                "grid_points must be at least {MIN_GRID_POINTS}, got {}",
                self.grid_points
            )));
        }
        if self.experiments.is_empty() {
            return Err(CliError::Config("no experiments requested".into()));
        }
        Ok(())
    }
}
