//! The five experiments, each producing one table.

use crate::config::{Experiment, RunConfig};
use crate::error::CliError;
use crate::output::Table;
use fracharvest_core::classical_control::{build_nfp, sample_nfp, singular_harvest};
use fracharvest_core::economics::compare_profits;
use fracharvest_core::fractional_control::{
    fractional_dynamics, optimal_harvest_alpha, optimal_state_trajectory,
};
use fracharvest_core::logistic_dynamics::{solve_harvest_arc, StateArc};
use fracharvest_core::{FractionalScenario, ProfitReport, UniformGrid};

pub struct Outcome {
    pub table: Table,
    pub profits: Option<ProfitReport>,
}

fn nodes(grid: &UniformGrid) -> Vec<f64> {
    grid.nodes().collect()
}

pub fn classical(s: &FractionalScenario, grid: &UniformGrid) -> Result<Table, CliError> {
    let sol = build_nfp(&s.base)?;
    let (x, h) = sample_nfp(&sol, &s.base, grid)?;
    Ok(Table {
        name: "classical",
        columns: vec![
            ("t", nodes(grid)),
            ("x_classical", x.into_values()),
            ("h_classical", h.into_values()),
        ],
    })
}

pub fn fractional(s: &FractionalScenario, grid: &UniformGrid) -> Result<Table, CliError> {
    let x = optimal_state_trajectory(s, grid)?;
    let h = optimal_harvest_alpha(s, grid)?;
    Ok(Table {
        name: "fractional",
        columns: vec![
            ("t", nodes(grid)),
            ("x_fractional", x.into_values()),
            ("h_fractional", h.into_values()),
        ],
    })
}

pub fn no_harvest(s: &FractionalScenario, grid: &UniformGrid) -> Result<Table, CliError> {
    let arc = solve_harvest_arc(&s.base.logistic()?, 0.0, 0.0, s.base.x0)?;
    let classical = grid.nodes().map(|t| arc.eval(t)).collect();
    let x = fractional_dynamics(s, 0.0, grid)?;
    Ok(Table {
        name: "no_harvest",
        columns: vec![
            ("t", nodes(grid)),
            ("x_alpha1", classical),
            ("x_alpha", x.into_values()),
        ],
    })
}

pub fn cross_policy(s: &FractionalScenario, grid: &UniformGrid) -> Result<Table, CliError> {
    let optimum = optimal_state_trajectory(s, grid)?;
    let x = fractional_dynamics(s, singular_harvest(&s.base)?, grid)?;
    Ok(Table {
        name: "cross_policy",
        columns: vec![
            ("t", nodes(grid)),
            ("x_frac_optimal", optimum.into_values()),
            ("x_frac_classical_harvest", x.into_values()),
        ],
    })
}

pub fn compare(
    s: &FractionalScenario,
    grid: &UniformGrid,
) -> Result<(Table, ProfitReport), CliError> {
    let report = compare_profits(&s.base, s.alpha, grid, true)?;
    let table = Table {
        name: "profits",
        columns: vec![
            ("classical_profit", vec![report.classical_profit]),
            ("fractional_profit", vec![report.fractional_profit]),
            (
                "cross_policy_profit",
                vec![report.cross_policy_profit.unwrap_or(f64::NAN)],
            ),
            ("relative_gap", vec![report.relative_gap]),
        ],
    };
    Ok((table, report))
}

fn run_one(e: Experiment, s: &FractionalScenario, grid: &UniformGrid) -> Result<Outcome, CliError> {
    let plain = |table| Outcome {
        table,
        profits: None,
    };
    match e {
        Experiment::Classical => classical(s, grid).map(plain),
        Experiment::Fractional => fractional(s, grid).map(plain),
        Experiment::NoHarvest => no_harvest(s, grid).map(plain),
        Experiment::CrossPolicy => cross_policy(s, grid).map(plain),
        Experiment::Compare => compare(s, grid).map(|(table, report)| Outcome {
            table,
            profits: Some(report),
        }),
    }
}

/// Runs the requested experiments concurrently. Results come back in
/// experiment order; the first failure in that order is returned.
pub fn run_all(config: &RunConfig) -> Result<Vec<Outcome>, CliError> {
    config.validate()?;
    let s = FractionalScenario::new(config.scenario, config.alpha)?;
    let grid = UniformGrid::new(0.0, config.scenario.horizon, config.grid_points)?;
    let results: Vec<Result<Outcome, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .experiments
            .iter()
            .map(|&e| scope.spawn(move || run_one(e, &s, &grid)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("experiment thread panicked"))
            .collect()
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracharvest_core::ScenarioParams;

    fn setup(alpha: f64, n: usize) -> (FractionalScenario, UniformGrid) {
        (
            FractionalScenario::new(ScenarioParams::pacific_halibut(), alpha).unwrap(),
            UniformGrid::new(0.0, 10.0, n).unwrap(),
        )
    }

    #[test]
    fn tables_share_the_grid() {
        let (s, g) = setup(0.6, 200);
        for table in [
            classical(&s, &g).unwrap(),
            fractional(&s, &g).unwrap(),
            no_harvest(&s, &g).unwrap(),
            cross_policy(&s, &g).unwrap(),
        ] {
            assert_eq!(table.columns.len(), 3);
            assert!(table.columns.iter().all(|(_, c)| c.len() == 201));
            assert_eq!(table.columns[0].1[200], 10.0);
        }
    }

    #[test]
    fn starting_values() {
        let (s, g) = setup(0.6, 200);
        let nh = no_harvest(&s, &g).unwrap();
        assert_eq!(nh.columns[1].1[0], 38.6896);
        assert_eq!(nh.columns[2].1[0], 38.6896);
        let cp = cross_policy(&s, &g).unwrap();
        assert!((cp.columns[1].1[0] - 38.6896).abs() < 1e-3);
    }

    #[test]
    fn profit_row_is_complete() {
        let (s, g) = setup(0.6, 1000);
        let (table, report) = compare(&s, &g).unwrap();
        assert_eq!(table.rows(), 1);
        assert!(report.cross_policy_profit.is_some());
        assert!(table.columns.iter().all(|(_, c)| c[0].is_finite()));
    }
}
