//! Harvesting with Caputo dynamics `D^α x = r x (1 - x/K) - h`, `0 < α ≤ 1`.
//!
//! Eliminating the harvest turns the problem into a fractional variational
//! problem whose Euler-Lagrange equation is
//!
//! ```text
//! e^{-δt} r (1 - 2x/K) - δ (T-t)^{1-α} e^{-δT} E_{1,2-α}(δ(T-t)) = 0,
//! ```
//!
//! so the optimal state is explicit and the optimal harvest follows from the
//! dynamics once the Caputo derivative of that state is evaluated (L1 scheme).

use crate::classical_control::ScenarioParams;
use crate::error::{domain, Result};
use crate::fode_solver::{fabm_solve, FodeProblem};
use crate::fractional_operators::{caputo_left_l1, caputo_right_l1, check_order};
use crate::grid::{SampledTrajectory, UniformGrid};
use crate::special_functions::{mittag_leffler, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalScenario {
    pub base: ScenarioParams,
    pub alpha: f64,
}

impl FractionalScenario {
    pub fn new(base: ScenarioParams, alpha: f64) -> Result<Self> {
        check_order(alpha)?;
        base.validate()?;
        Ok(FractionalScenario { base, alpha })
    }
}

/// `(T-t)^{1-α} E_{1,2-α}(δ(T-t))`, with `0^{1-α} = 0` for `α < 1`.
fn terminal_kernel(s: &FractionalScenario, tau: f64) -> Result<f64> {
    let power = if s.alpha == 1.0 {
        1.0
    } else if tau == 0.0 {
        return Ok(0.0);
    } else {
        tau.powf(1.0 - s.alpha)
    };
    let ml = mittag_leffler(
        1.0,
        2.0 - s.alpha,
        s.base.delta * tau,
        &SeriesControl::default(),
    )?;
    Ok(power * ml)
}

fn check_time(s: &FractionalScenario, t: f64) -> Result<()> {
    if !(0.0..=s.base.horizon).contains(&t) {
        return domain(format!("time {t} outside [0, {}]", s.base.horizon));
    }
    Ok(())
}

fn check_spans_horizon(s: &FractionalScenario, grid: &UniformGrid) -> Result<()> {
    let tol = 1e-12 * s.base.horizon.max(1.0);
    if grid.t_start().abs() > tol || (grid.t_end() - s.base.horizon).abs() > tol {
        return domain(format!(
            "grid [{}, {}] must span [0, {}]",
            grid.t_start(),
            grid.t_end(),
            s.base.horizon
        ));
    }
    Ok(())
}

/// `x*_α(t) = (K/2)(1 - (δ/r)(T-t)^{1-α} e^{-δ(T-t)} E_{1,2-α}(δ(T-t)))`.
pub fn optimal_state_alpha(s: &FractionalScenario, t: f64) -> Result<f64> {
    check_time(s, t)?;
    let p = &s.base;
    let tau = p.horizon - t;
    let kernel = terminal_kernel(s, tau)?;
    Ok(p.k / 2.0 * (1.0 - p.delta / p.r * kernel * (-p.delta * tau).exp()))
}

pub fn optimal_state_trajectory(
    s: &FractionalScenario,
    grid: &UniformGrid,
) -> Result<SampledTrajectory> {
    check_spans_horizon(s, grid)?;
    SampledTrajectory::try_from_fn(*grid, |t| optimal_state_alpha(s, t.min(s.base.horizon)))
}

/// `h*_α = r x (1 - x/K) - D^α x` on every node. Node 0 carries the L1
/// convention `D^α x(0) = 0`.
pub fn optimal_harvest_alpha(
    s: &FractionalScenario,
    grid: &UniformGrid,
) -> Result<SampledTrajectory> {
    let state = optimal_state_trajectory(s, grid)?;
    let caputo = caputo_left_l1(&state, s.alpha)?;
    let (r, k) = (s.base.r, s.base.k);
    let h = state
        .values()
        .iter()
        .zip(caputo.values())
        .map(|(&x, &d)| r * x * (1.0 - x / k) - d)
        .collect();
    SampledTrajectory::new(*grid, h)
}

/// Left-hand side of the fractional Euler-Lagrange equation evaluated on `state`.
pub fn euler_lagrange_residual_of(
    s: &FractionalScenario,
    state: &SampledTrajectory,
) -> Result<SampledTrajectory> {
    let p = &s.base;
    check_spans_horizon(s, state.grid())?;
    let terminal_discount = (-p.delta * p.horizon).exp();
    let values = state
        .iter()
        .map(|(t, x)| {
            let t = t.min(p.horizon);
            let memory = p.delta * terminal_kernel(s, p.horizon - t)? * terminal_discount;
            Ok((-p.delta * t).exp() * p.r * (1.0 - 2.0 * x / p.k) - memory)
        })
        .collect::<Result<Vec<_>>>()?;
    SampledTrajectory::new(*state.grid(), values)
}

/// Euler-Lagrange residual of the optimal state; zero up to rounding.
pub fn euler_lagrange_residual(
    s: &FractionalScenario,
    grid: &UniformGrid,
) -> Result<SampledTrajectory> {
    euler_lagrange_residual_of(s, &optimal_state_trajectory(s, grid)?)
}

/// Largest deviation over interior nodes between the L1 right Caputo
/// derivative of `-e^{-δt}` and its closed form
/// `-δ (T-t)^{1-α} e^{-δT} E_{1,2-α}(δ(T-t))`.
pub fn verify_right_caputo_identity(s: &FractionalScenario, grid: &UniformGrid) -> Result<f64> {
    check_spans_horizon(s, grid)?;
    let p = &s.base;
    let f = SampledTrajectory::from_fn(*grid, |t| -(-p.delta * t).exp())?;
    let numeric = caputo_right_l1(&f, s.alpha)?;
    let terminal_discount = (-p.delta * p.horizon).exp();
    let n = grid.n_steps();
    let mut worst: f64 = 0.0;
    for k in 1..n {
        let t = grid.node(k);
        let exact = -p.delta * terminal_kernel(s, p.horizon - t)? * terminal_discount;
        worst = worst.max((numeric.values()[k] - exact).abs());
    }
    Ok(worst)
}

/// Solves `D^α x = r x (1 - x/K) - harvest` from `x(0) = x0` with one corrector pass.
pub fn fractional_dynamics(
    s: &FractionalScenario,
    harvest: f64,
    grid: &UniformGrid,
) -> Result<SampledTrajectory> {
    let (r, k) = (s.base.r, s.base.k);
    let problem = FodeProblem::new(
        s.alpha,
        s.base.x0,
        move |_t: f64, x: f64| r * x * (1.0 - x / k) - harvest,
        *grid,
    )?;
    fabm_solve(&problem, 1)
}
