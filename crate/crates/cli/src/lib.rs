//! Library side of the `fracharvest` command: configuration, experiments
//! and file output.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

use config::RunConfig;
use error::CliError;
use fracharvest_core::ProfitReport;
use std::path::PathBuf;

pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub profits: Option<ProfitReport>,
}

/// Runs every requested experiment and writes its CSV (and SVG when `plots`)
/// into `config.output_dir`.
pub fn run(config: &RunConfig, plots: bool) -> Result<RunSummary, CliError> {
    let outcomes = experiments::run_all(config)?;
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.clone(),
        source,
    })?;
    let mut files = Vec::new();
    let mut profits = None;
    for outcome in outcomes {
        files.push(output::write_csv(&outcome.table, dir)?);
        if plots && outcome.profits.is_none() {
            files.push(output::write_svg(&outcome.table, dir)?);
        }
        profits = profits.or(outcome.profits);
    }
    Ok(RunSummary { files, profits })
}
