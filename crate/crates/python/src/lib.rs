//! Python bindings. Trajectories cross the boundary as `(t, values)` lists.

use fracharvest_core::classical_control as classical;
use fracharvest_core::economics;
use fracharvest_core::fode_solver::{fabm_solve as solve, FodeProblem};
use fracharvest_core::fractional_control as fractional;
use fracharvest_core::fractional_operators as operators;
use fracharvest_core::special_functions as special;
use fracharvest_core::{
    FractionalScenario, HarvestError, PiecewiseSolution, ProfitReport, SampledTrajectory,
    ScenarioParams, SeriesControl, UniformGrid,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use std::cell::RefCell;

create_exception!(fracharvest, NumericalError, PyException);

fn to_py(e: HarvestError) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

type Series = (Vec<f64>, Vec<f64>);

fn split(traj: SampledTrajectory) -> Series {
    (traj.grid().nodes().collect(), traj.into_values())
}

/// Scenario parameters. Defaults to the Pacific halibut fishery.
#[pyclass(name = "Scenario", get_all, set_all, from_py_object)]
#[derive(Clone, Copy)]
struct PyScenario {
    r: f64,
    k: f64,
    delta: f64,
    horizon: f64,
    x0: f64,
    x_t: f64,
    h_min: f64,
    h_max: f64,
}

impl From<PyScenario> for ScenarioParams {
    fn from(s: PyScenario) -> Self {
        ScenarioParams {
            r: s.r,
            k: s.k,
            delta: s.delta,
            horizon: s.horizon,
            x0: s.x0,
            x_t: s.x_t,
            h_min: s.h_min,
            h_max: s.h_max,
        }
    }
}

impl PyScenario {
    fn params(&self) -> PyResult<ScenarioParams> {
        let p = ScenarioParams::from(*self);
        p.validate().map_err(to_py)?;
        Ok(p)
    }

    fn fractional(&self, alpha: f64) -> PyResult<FractionalScenario> {
        FractionalScenario::new(self.params()?, alpha).map_err(to_py)
    }

    fn grid(&self, n: usize) -> PyResult<UniformGrid> {
        UniformGrid::new(0.0, self.horizon, n).map_err(to_py)
    }
}

#[pymethods]
impl PyScenario {
    #[new]
    #[pyo3(signature = (r=0.71, k=80.5, delta=0.01, horizon=10.0, x0=38.6896, x_t=40.25, h_min=10.0, h_max=15.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        r: f64,
        k: f64,
        delta: f64,
        horizon: f64,
        x0: f64,
        x_t: f64,
        h_min: f64,
        h_max: f64,
    ) -> Self {
        PyScenario {
            r,
            k,
            delta,
            horizon,
            x0,
            x_t,
            h_min,
            h_max,
        }
    }

    fn validate(&self) -> PyResult<()> {
        self.params().map(|_| ())
    }

    fn singular_state(&self) -> PyResult<f64> {
        classical::singular_state(&self.params()?).map_err(to_py)
    }

    fn singular_harvest(&self) -> PyResult<f64> {
        classical::singular_harvest(&self.params()?).map_err(to_py)
    }

    fn is_feasible(&self) -> PyResult<bool> {
        Ok(classical::check_feasibility(&self.params()?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Scenario(r={}, k={}, delta={}, horizon={}, x0={}, x_t={}, h_min={}, h_max={})",
            self.r, self.k, self.delta, self.horizon, self.x0, self.x_t, self.h_min, self.h_max
        )
    }
}

/// Classical nearest-feasible-path solution.
#[pyclass(name = "NfpSolution", frozen)]
struct PyNfp {
    inner: PiecewiseSolution,
    scenario: ScenarioParams,
}

#[pymethods]
impl PyNfp {
    #[getter]
    fn t_min(&self) -> f64 {
        self.inner.t_min
    }

    #[getter]
    fn t_max(&self) -> f64 {
        self.inner.t_max
    }

    #[getter]
    fn singular_state(&self) -> f64 {
        self.inner.singular_state
    }

    #[getter]
    fn singular_harvest(&self) -> f64 {
        self.inner.singular_harvest
    }

    /// `(state, harvest)` at time `t`.
    fn at(&self, t: f64) -> (f64, f64) {
        self.inner.at(t)
    }

    /// `(t, state, harvest)` on `n` intervals of `[0, T]`.
    fn sample(&self, n: usize) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let grid = UniformGrid::new(0.0, self.scenario.horizon, n).map_err(to_py)?;
        let (x, h) = classical::sample_nfp(&self.inner, &self.scenario, &grid).map_err(to_py)?;
        Ok((grid.nodes().collect(), x.into_values(), h.into_values()))
    }
}

#[pyclass(name = "ProfitReport", get_all, frozen)]
struct PyProfitReport {
    classical_profit: f64,
    fractional_profit: f64,
    cross_policy_profit: Option<f64>,
    relative_gap: f64,
}

impl From<ProfitReport> for PyProfitReport {
    fn from(r: ProfitReport) -> Self {
        PyProfitReport {
            classical_profit: r.classical_profit,
            fractional_profit: r.fractional_profit,
            cross_policy_profit: r.cross_policy_profit,
            relative_gap: r.relative_gap,
        }
    }
}

#[pymethods]
impl PyProfitReport {
    fn __repr__(&self) -> String {
        format!(
            "ProfitReport(classical_profit={}, fractional_profit={}, cross_policy_profit={:?}, relative_gap={})",
            self.classical_profit, self.fractional_profit, self.cross_policy_profit, self.relative_gap
        )
    }
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    special::gamma(x).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, z, abs_tol=1e-12, max_terms=200))]
fn mittag_leffler(alpha: f64, beta: f64, z: f64, abs_tol: f64, max_terms: usize) -> PyResult<f64> {
    let ctl = SeriesControl::new(abs_tol, max_terms).map_err(to_py)?;
    special::mittag_leffler(alpha, beta, z, &ctl).map_err(to_py)
}

/// Left Caputo derivative of samples on a uniform grid over `[t_start, t_end]`.
#[pyfunction]
fn caputo_l1(values: Vec<f64>, t_start: f64, t_end: f64, alpha: f64) -> PyResult<Vec<f64>> {
    let n = values.len().saturating_sub(1);
    let grid = UniformGrid::new(t_start, t_end, n).map_err(to_py)?;
    let f = SampledTrajectory::new(grid, values).map_err(to_py)?;
    Ok(operators::caputo_left_l1(&f, alpha)
        .map_err(to_py)?
        .into_values())
}

/// Solves `D^alpha x = rhs(t, x)` from `x(t_start) = x0`.
#[pyfunction]
#[pyo3(signature = (rhs, alpha, x0, t_end, n, t_start=0.0, corrector_iters=1))]
fn fabm_solve(
    rhs: &Bound<'_, PyAny>,
    alpha: f64,
    x0: f64,
    t_end: f64,
    n: usize,
    t_start: f64,
    corrector_iters: usize,
) -> PyResult<Series> {
    let grid = UniformGrid::new(t_start, t_end, n).map_err(to_py)?;
    let failure: RefCell<Option<PyErr>> = RefCell::new(None);
    let f = |t: f64, x: f64| match rhs.call1((t, x)).and_then(|v| v.extract::<f64>()) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let problem = FodeProblem::new(alpha, x0, f, grid).map_err(to_py)?;
    let result = solve(&problem, corrector_iters);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result.map(split).map_err(to_py)
}

#[pyfunction]
fn build_nfp(scenario: PyScenario) -> PyResult<PyNfp> {
    let p = scenario.params()?;
    let inner = classical::build_nfp(&p).map_err(to_py)?;
    Ok(PyNfp { inner, scenario: p })
}

#[pyfunction]
fn optimal_state(scenario: PyScenario, alpha: f64, n: usize) -> PyResult<Series> {
    let s = scenario.fractional(alpha)?;
    let grid = scenario.grid(n)?;
    fractional::optimal_state_trajectory(&s, &grid)
        .map(split)
        .map_err(to_py)
}

#[pyfunction]
fn optimal_harvest(scenario: PyScenario, alpha: f64, n: usize) -> PyResult<Series> {
    let s = scenario.fractional(alpha)?;
    let grid = scenario.grid(n)?;
    fractional::optimal_harvest_alpha(&s, &grid)
        .map(split)
        .map_err(to_py)
}

#[pyfunction]
fn euler_lagrange_residual(scenario: PyScenario, alpha: f64, n: usize) -> PyResult<Series> {
    let s = scenario.fractional(alpha)?;
    let grid = scenario.grid(n)?;
    fractional::euler_lagrange_residual(&s, &grid)
        .map(split)
        .map_err(to_py)
}

/// Fractional logistic dynamics from `x0` under a constant harvest.
#[pyfunction]
fn fractional_dynamics(
    scenario: PyScenario,
    alpha: f64,
    harvest: f64,
    n: usize,
) -> PyResult<Series> {
    let s = scenario.fractional(alpha)?;
    let grid = scenario.grid(n)?;
    fractional::fractional_dynamics(&s, harvest, &grid)
        .map(split)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (scenario, alpha, n, cross_policy=true))]
fn compare_profits(
    scenario: PyScenario,
    alpha: f64,
    n: usize,
    cross_policy: bool,
) -> PyResult<PyProfitReport> {
    let grid = scenario.grid(n)?;
    economics::compare_profits(&scenario.params()?, alpha, &grid, cross_policy)
        .map(PyProfitReport::from)
        .map_err(to_py)
}

#[pymodule]
fn fracharvest(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyNfp>()?;
    m.add_class::<PyProfitReport>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(caputo_l1, m)?)?;
    m.add_function(wrap_pyfunction!(fabm_solve, m)?)?;
    m.add_function(wrap_pyfunction!(build_nfp, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_state, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_harvest, m)?)?;
    m.add_function(wrap_pyfunction!(euler_lagrange_residual, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_dynamics, m)?)?;
    m.add_function(wrap_pyfunction!(compare_profits, m)?)?;
    Ok(())
}
