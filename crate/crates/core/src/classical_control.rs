//! Classical harvesting problem: maximise `∫_0^T e^{-δt} h dt` subject to
//! `x' = r x (1 - x/K) - h`, fixed end states and `h_min ≤ h ≤ h_max`.
//!
//! The Euler-Lagrange equation gives a constant singular state, which
//! cannot meet both boundary conditions. The optimal path approaches it as
//! fast as the harvest bounds allow, stays on it, and leaves it as late as
//! possible to reach `x_T` at `T`.

use crate::error::{domain, HarvestError, Result};
use crate::grid::{SampledTrajectory, UniformGrid};
use crate::logistic_dynamics::{solve_harvest_arc, HarvestArc, LogisticParams, StateArc};

/// Bisection stops once the bracket is narrower than this.
pub const SWITCH_TIME_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    pub r: f64,
    pub k: f64,
    pub delta: f64,
    pub horizon: f64,
    pub x0: f64,
    pub x_t: f64,
    pub h_min: f64,
    pub h_max: f64,
}

impl ScenarioParams {
    /// Pacific halibut fishery: r = 0.71, K = 80.5, δ = 0.01, T = 10,
    /// x(0) = 38.6896, x(10) = 40.25, 10 ≤ h ≤ 15.
    pub fn pacific_halibut() -> Self {
        ScenarioParams {
            r: 0.71,
            k: 80.5,
            delta: 0.01,
            horizon: 10.0,
            x0: 38.6896,
            x_t: 40.25,
            h_min: 10.0,
            h_max: 15.0,
        }
    }

    pub fn logistic(&self) -> Result<LogisticParams> {
        LogisticParams::new(self.r, self.k)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.r,
            self.k,
            self.delta,
            self.horizon,
            self.x0,
            self.x_t,
            self.h_min,
            self.h_max,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return domain("scenario parameters must be finite");
        }
        self.logistic()?;
        if self.delta < 0.0 {
            return domain(format!(
                "discount rate must be non-negative, got {}",
                self.delta
            ));
        }
        if self.delta >= self.r {
            return domain(format!(
                "discount rate {} must be below the growth rate {} for a positive singular state",
                self.delta, self.r
            ));
        }
        if self.horizon <= 0.0 {
            return domain(format!("horizon must be positive, got {}", self.horizon));
        }
        for (name, x) in [("x0", self.x0), ("xT", self.x_t)] {
            if !(x > 0.0 && x < self.k) {
                return domain(format!("{name} = {x} must lie in (0, K) = (0, {})", self.k));
            }
        }
        if self.h_min < 0.0 || self.h_min >= self.h_max {
            return domain(format!(
                "harvest bounds must satisfy 0 <= h_min < h_max, got [{}, {}]",
                self.h_min, self.h_max
            ));
        }
        Ok(())
    }
}

/// Approach arc, singular arc, exit arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiecewiseSolution {
    pub t_min: f64,
    pub t_max: f64,
    pub approach: HarvestArc,
    pub exit: HarvestArc,
    pub singular_state: f64,
    pub singular_harvest: f64,
}

impl PiecewiseSolution {
    /// State and harvest at time `t`.
    pub fn at(&self, t: f64) -> (f64, f64) {
        if t < self.t_min {
            (self.approach.eval(t), self.approach.harvest())
        } else if t <= self.t_max {
            (self.singular_state, self.singular_harvest)
        } else {
            (self.exit.eval(t), self.exit.harvest())
        }
    }
}

fn check_discount(p: &ScenarioParams) -> Result<()> {
    if p.delta.is_nan() || p.delta >= p.r {
        return domain(format!(
            "singular solution needs delta < r (delta = {}, r = {})",
            p.delta, p.r
        ));
    }
    Ok(())
}

/// `x* = (K/2)(1 - δ/r)`.
pub fn singular_state(p: &ScenarioParams) -> Result<f64> {
    check_discount(p)?;
    Ok(p.k / 2.0 * (1.0 - p.delta / p.r))
}

/// `h* = (K/4)(r² - δ²)/r`.
pub fn singular_harvest(p: &ScenarioParams) -> Result<f64> {
    check_discount(p)?;
    Ok(p.k / 4.0 * (p.r * p.r - p.delta * p.delta) / p.r)
}

/// Whether the singular harvest respects the harvest bounds (inclusive).
pub fn check_feasibility(p: &ScenarioParams) -> bool {
    match singular_harvest(p) {
        Ok(h) => p.h_min <= h && h <= p.h_max,
        Err(_) => false,
    }
}

/// Time in `bracket` where the monotone `arc` crosses `target`, by bisection.
///
/// The bracket is first clipped to the arc's lifespan, so arcs that blow up
/// inside the bracket are only searched where they are finite.
pub fn find_switch_time<A: StateArc + ?Sized>(
    arc: &A,
    target: f64,
    bracket: (f64, f64),
) -> Result<f64> {
    let (lo0, hi0) = bracket;
    if lo0.is_nan() || hi0.is_nan() || lo0 > hi0 {
        return domain(format!("bracket ({lo0}, {hi0}) is reversed"));
    }
    let (life_lo, life_hi) = arc.lifespan();
    let nudge = |t: f64| 1e-9 * t.abs().max(1.0);
    let mut lo = if lo0 <= life_lo {
        life_lo + nudge(life_lo)
    } else {
        lo0
    };
    let mut hi = if hi0 >= life_hi {
        life_hi - nudge(life_hi)
    } else {
        hi0
    };
    let g = |t: f64| arc.eval(t) - target;
    let no_crossing = |lo: f64, hi: f64| {
        let (a, b) = (arc.eval(lo), arc.eval(hi));
        HarvestError::NoCrossing {
            target,
            lo: a.min(b),
            hi: a.max(b),
        }
    };
    if lo > hi {
        return Err(no_crossing(lo0, lo0));
    }
    let (mut g_lo, g_hi) = (g(lo), g(hi));
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(no_crossing(lo, hi));
    }
    while hi - lo > SWITCH_TIME_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Builds the nearest-feasible-path solution for `p`.
pub fn build_nfp(p: &ScenarioParams) -> Result<PiecewiseSolution> {
    p.validate()?;
    let x_star = singular_state(p)?;
    let h_star = singular_harvest(p)?;
    if !check_feasibility(p) {
        return Err(HarvestError::Infeasible {
            singular_harvest: h_star,
            h_min: p.h_min,
            h_max: p.h_max,
        });
    }
    let logistic = p.logistic()?;
    let horizon = p.horizon;

    // Below x*: harvest as little as possible to grow towards it; above: as much as possible.
    let approach_h = if p.x0 < x_star { p.h_min } else { p.h_max };
    let approach = solve_harvest_arc(&logistic, approach_h, 0.0, p.x0)?;
    let t_min = if p.x0 == x_star {
        0.0
    } else {
        find_switch_time(&approach, x_star, (0.0, horizon)).map_err(|e| {
            HarvestError::InfeasiblePath(format!("approach arc never reaches x* = {x_star}: {e}"))
        })?
    };

    let exit_h = if p.x_t > x_star { p.h_min } else { p.h_max };
    let exit = solve_harvest_arc(&logistic, exit_h, horizon, p.x_t)?;
    let t_max = if p.x_t == x_star {
        horizon
    } else {
        find_switch_time(&exit, x_star, (0.0, horizon)).map_err(|e| {
            HarvestError::InfeasiblePath(format!("exit arc never leaves x* = {x_star}: {e}"))
        })?
    };

    if t_min > t_max {
        return Err(HarvestError::InfeasiblePath(format!(
            "approach ends at t_min = {t_min} after the exit starts at t_max = {t_max}"
        )));
    }
    Ok(PiecewiseSolution {
        t_min,
        t_max,
        approach,
        exit,
        singular_state: x_star,
        singular_harvest: h_star,
    })
}

/// State and harvest of `sol` on `grid`, which must lie inside `[0, T]`.
pub fn sample_nfp(
    sol: &PiecewiseSolution,
    p: &ScenarioParams,
    grid: &UniformGrid,
) -> Result<(SampledTrajectory, SampledTrajectory)> {
    let slack = 1e-12 * p.horizon.max(1.0);
    if grid.t_start() < -slack || grid.t_end() > p.horizon + slack {
        return domain(format!(
            "grid [{}, {}] extends outside [0, {}]",
            grid.t_start(),
            grid.t_end(),
            p.horizon
        ));
    }
    let (state, harvest): (Vec<f64>, Vec<f64>) = grid.nodes().map(|t| sol.at(t)).unzip();
    Ok((
        SampledTrajectory::new(*grid, state)?,
        SampledTrajectory::new(*grid, harvest)?,
    ))
}
