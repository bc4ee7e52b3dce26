//! Discounted harvest value `∫_0^T e^{-δt} h(t) dt` and the classical versus
//! fractional comparison.

use crate::classical_control::{build_nfp, sample_nfp, singular_harvest, ScenarioParams};
use crate::error::{HarvestError, Result};
use crate::fractional_control::{optimal_harvest_alpha, FractionalScenario};
use crate::grid::{SampledTrajectory, UniformGrid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfitReport {
    pub classical_profit: f64,
    pub fractional_profit: f64,
    /// Value of the classical singular harvest held constant over the whole
    /// horizon, as applied in the cross-policy experiment.
    pub cross_policy_profit: Option<f64>,
    /// `|classical - fractional| / classical`.
    pub relative_gap: f64,
}

/// Composite trapezoid rule applied to `e^{-δ t_k} h(t_k)`.
pub fn discounted_profit(h: &SampledTrajectory, delta: f64) -> f64 {
    let dt = h.grid().dt();
    let weighted: Vec<f64> = h.iter().map(|(t, v)| (-delta * t).exp() * v).collect();
    let n = weighted.len() - 1;
    let inner: f64 = weighted[1..n].iter().sum();
    dt * (0.5 * (weighted[0] + weighted[n]) + inner)
}

/// Replaces both endpoint values by linear extrapolation from the two
/// nearest interior nodes.
pub fn extrapolate_endpoints(h: &SampledTrajectory) -> Result<SampledTrajectory> {
    let n = h.grid().n_steps();
    if n < 3 {
        return Err(HarvestError::Shape(format!(
            "endpoint extrapolation needs two interior nodes, grid has {}",
            n.saturating_sub(1)
        )));
    }
    let mut v = h.values().to_vec();
    v[0] = 2.0 * v[1] - v[2];
    v[n] = 2.0 * v[n - 1] - v[n - 2];
    SampledTrajectory::new(*h.grid(), v)
}

/// Discounted value of the fractional optimal harvest, using interior L1
/// values and extrapolated endpoints.
pub fn fractional_profit(s: &FractionalScenario, grid: &UniformGrid) -> Result<f64> {
    let h = extrapolate_endpoints(&optimal_harvest_alpha(s, grid)?)?;
    Ok(discounted_profit(&h, s.base.delta))
}

pub fn classical_profit(p: &ScenarioParams, grid: &UniformGrid) -> Result<f64> {
    let sol = build_nfp(p)?;
    let (_, h) = sample_nfp(&sol, p, grid)?;
    Ok(discounted_profit(&h, p.delta))
}

/// Runs both problems on `grid` and compares their discounted profits.
pub fn compare_profits(
    p: &ScenarioParams,
    alpha: f64,
    grid: &UniformGrid,
    with_cross_policy: bool,
) -> Result<ProfitReport> {
    let scenario = FractionalScenario::new(*p, alpha)?;
    let classical = classical_profit(p, grid)?;
    let fractional = fractional_profit(&scenario, grid)?;
    let cross_policy_profit = if with_cross_policy {
        let h_star = singular_harvest(p)?;
        let h = SampledTrajectory::from_fn(*grid, |_| h_star)?;
        Some(discounted_profit(&h, p.delta))
    } else {
        None
    };
    Ok(ProfitReport {
        classical_profit: classical,
        fractional_profit: fractional,
        cross_policy_profit,
        relative_gap: (classical - fractional).abs() / classical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize) -> UniformGrid {
        UniformGrid::new(0.0, 10.0, n).unwrap()
    }

    #[test]
    fn constant_harvest_undiscounted() {
        let h = SampledTrajectory::from_fn(grid(37), |_| 3.5).unwrap();
        assert!((discounted_profit(&h, 0.0) - 35.0).abs() < 1e-12);
    }

    #[test]
    fn constant_harvest_discounted_matches_closed_form() {
        let h = SampledTrajectory::from_fn(grid(10_000), |_| 14.2859).unwrap();
        let exact = 14.2859 * (1.0 - (-0.1f64).exp()) / 0.01;
        assert!((discounted_profit(&h, 0.01) - exact).abs() < 1e-6);
    }

    #[test]
    fn halibut_profits() {
        let p = ScenarioParams::pacific_halibut();
        let g = grid(10_000);
        let report = compare_profits(&p, 0.6, &g, true).unwrap();
        assert!(
            (report.classical_profit - 134.411).abs() < 0.05,
            "{report:?}"
        );
        assert!(
            (report.fractional_profit - 133.828).abs() < 0.5,
            "{report:?}"
        );
        // (134.411 - 133.828) / 134.411
        assert!((report.relative_gap - 0.00434).abs() < 0.002);
        let cross = report.cross_policy_profit.unwrap();
        assert!((cross - 14.2859 * (1.0 - (-0.1f64).exp()) / 0.01).abs() < 1e-3);
    }

    #[test]
    fn order_one_fractional_branch_is_the_singular_arc() {
        // At α = 1 the fractional branch is the unconstrained singular solution,
        // so it differs from the classical branch only by the two boundary arcs.
        let p = ScenarioParams::pacific_halibut();
        let g = grid(10_000);
        let report = compare_profits(&p, 1.0, &g, false).unwrap();
        let singular_only = 14.2859 * (1.0 - (-0.1f64).exp()) / 0.01;
        assert!((report.fractional_profit - singular_only).abs() / singular_only < 1e-3);
        assert!(report.fractional_profit > report.classical_profit);
        assert!(report.cross_policy_profit.is_none());
    }

    #[test]
    fn undiscounted_profits_coincide() {
        // Boundary data taken from the undiscounted fractional solution x ≡ K/2.
        let p = ScenarioParams {
            delta: 0.0,
            x0: 40.25,
            x_t: 40.25,
            ..ScenarioParams::pacific_halibut()
        };
        for alpha in [0.3, 0.6, 1.0] {
            let report = compare_profits(&p, alpha, &grid(1000), false).unwrap();
            assert!(report.relative_gap <= 1e-12, "{report:?}");
        }
    }

    #[test]
    fn quadrature_refinement() {
        let p = ScenarioParams::pacific_halibut();
        let profits: Vec<f64> = [500, 1000, 2000]
            .iter()
            .map(|&n| classical_profit(&p, &grid(n)).unwrap())
            .collect();
        let d1 = (profits[1] - profits[0]).abs();
        let d2 = (profits[2] - profits[1]).abs();
        assert!(d2 <= 4.0 * d1);
    }

    #[test]
    fn extrapolation_needs_interior_nodes() {
        let h = SampledTrajectory::from_fn(grid(2), |t| t).unwrap();
        assert!(extrapolate_endpoints(&h).is_err());
        let h = SampledTrajectory::from_fn(grid(4), |t| 2.0 * t + 1.0).unwrap();
        let e = extrapolate_endpoints(&h).unwrap();
        for (a, b) in e.values().iter().zip(h.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn positive_and_discount_monotone(
            level in 0.1f64..20.0,
            wiggle in 0.0f64..0.09,
            d1 in 0.0f64..0.5,
            d2 in 0.0f64..0.5,
        ) {
            let h = SampledTrajectory::from_fn(grid(200), |t| level * (1.0 + wiggle * (3.0 * t).sin())).unwrap();
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let p_lo = discounted_profit(&h, lo);
            let p_hi = discounted_profit(&h, hi);
            prop_assert!(p_hi > 0.0);
            prop_assert!(p_hi <= p_lo);
        }
    }
}
