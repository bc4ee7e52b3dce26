//! Fractional Adams-Bashforth-Moulton predictor-corrector for scalar Caputo
//! initial-value problems `D^α x = f(t, x)`, `x(t_0) = x_0`, `0 < α ≤ 1`.
//!
//! Predictor: product-rectangle rule. Corrector: product-trapezoid rule.
//! The full memory sum is kept at every step (O(n²) work overall).

use crate::error::{domain, HarvestError, Result};
use crate::fractional_operators::check_order;
use crate::grid::{SampledTrajectory, UniformGrid};
use crate::special_functions::gamma;

/// Magnitude past which a solution is treated as blown up.
pub const OVERFLOW_GUARD: f64 = 1e12;

pub struct FodeProblem<F> {
    pub alpha: f64,
    pub x0: f64,
    pub rhs: F,
    pub grid: UniformGrid,
}

impl<F> FodeProblem<F>
where
    F: Fn(f64, f64) -> f64,
{
    pub fn new(alpha: f64, x0: f64, rhs: F, grid: UniformGrid) -> Result<Self> {
        check_order(alpha)?;
        if !x0.is_finite() {
            return domain(format!("initial value must be finite, got {x0}"));
        }
        Ok(FodeProblem {
            alpha,
            x0,
            rhs,
            grid,
        })
    }
}

/// Product-integration weights for step `n -> n+1`. The memory integral is
/// `1/Γ(α)` times the weighted sum.
#[derive(Debug, Clone, PartialEq)]
pub struct AbmWeights {
    /// `b_{j,n+1}` for `j = 0..=n`.
    pub predictor: Vec<f64>,
    /// `a_{j,n+1}` for `j = 0..=n+1`.
    pub corrector: Vec<f64>,
}

/// Precomputed powers shared by every step.
struct WeightTable {
    rect_scale: f64,
    trap_scale: f64,
    /// k^α
    pow_a: Vec<f64>,
    /// k^{α+1}
    pow_a1: Vec<f64>,
}

impl WeightTable {
    /// `scale` multiplies every weight: 1/Γ(α) inside the solver, 1 for [`abm_weights`].
    fn new(alpha: f64, n_max: usize, dt: f64, scale: f64) -> Self {
        let dta = dt.powf(alpha);
        let pow = |e: f64| {
            (0..=n_max + 2)
                .map(|k| (k as f64).powf(e))
                .collect::<Vec<_>>()
        };
        WeightTable {
            rect_scale: scale * dta / alpha,
            trap_scale: scale * dta / (alpha * (alpha + 1.0)),
            pow_a: pow(alpha),
            pow_a1: pow(alpha + 1.0),
        }
    }

    /// b_{j,n+1} depends only on d = n - j.
    fn rect(&self, d: usize) -> f64 {
        self.rect_scale * (self.pow_a[d + 1] - self.pow_a[d])
    }

    fn trap_first(&self, n: usize, alpha: f64) -> f64 {
        let nf = n as f64;
        self.trap_scale * (self.pow_a1[n] - (nf - alpha) * self.pow_a[n + 1])
    }

    /// a_{j,n+1} for 1 ≤ j ≤ n, with d = n - j.
    fn trap_inner(&self, d: usize) -> f64 {
        self.trap_scale * (self.pow_a1[d + 2] + self.pow_a1[d] - 2.0 * self.pow_a1[d + 1])
    }

    fn trap_last(&self) -> f64 {
        self.trap_scale
    }
}

/// Weights for the step from node `n` to node `n + 1`.
///
/// `b_{j,n+1} = dt^α/α · ((n+1-j)^α - (n-j)^α)` and
/// `a_{j,n+1} = dt^α/(α(α+1)) · c_j`. At `α = 1` these are forward Euler
/// (`b = dt`) and the trapezoid rule (`a = dt/2 · (1, 2, …, 2, 1)`).
pub fn abm_weights(alpha: f64, n: usize, dt: f64) -> Result<AbmWeights> {
    check_order(alpha)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return domain(format!("step must be positive, got {dt}"));
    }
    let table = WeightTable::new(alpha, n, dt, 1.0);
    let predictor = (0..=n).map(|j| table.rect(n - j)).collect();
    let mut corrector = Vec::with_capacity(n + 2);
    corrector.push(table.trap_first(n, alpha));
    corrector.extend((1..=n).map(|j| table.trap_inner(n - j)));
    corrector.push(table.trap_last());
    Ok(AbmWeights {
        predictor,
        corrector,
    })
}

/// Integrates `problem` over its grid. `corrector_iters` corrector sweeps are
/// applied per step (one reproduces the classical scheme).
pub fn fabm_solve<F>(problem: &FodeProblem<F>, corrector_iters: usize) -> Result<SampledTrajectory>
where
    F: Fn(f64, f64) -> f64,
{
    let alpha = problem.alpha;
    check_order(alpha)?;
    if corrector_iters == 0 {
        return domain("at least one corrector iteration is required");
    }
    let grid = problem.grid;
    let n_steps = grid.n_steps();
    let table = WeightTable::new(alpha, n_steps, grid.dt(), 1.0 / gamma(alpha)?);
    let x0 = problem.x0;

    let mut u = Vec::with_capacity(n_steps + 1);
    let mut f_hist = Vec::with_capacity(n_steps + 1);
    u.push(x0);
    f_hist.push((problem.rhs)(grid.node(0), x0));

    for n in 0..n_steps {
        let t_next = grid.node(n + 1);

        let predicted = x0
            + f_hist
                .iter()
                .enumerate()
                .map(|(j, fj)| table.rect(n - j) * fj)
                .sum::<f64>();

        let history = table.trap_first(n, alpha) * f_hist[0]
            + f_hist[1..]
                .iter()
                .enumerate()
                .map(|(i, fj)| table.trap_inner(n - (i + 1)) * fj)
                .sum::<f64>();

        let mut next = predicted;
        for _ in 0..corrector_iters {
            next = x0 + history + table.trap_last() * (problem.rhs)(t_next, next);
        }

        if !next.is_finite() || next.abs() > OVERFLOW_GUARD {
            return Err(HarvestError::Divergence {
                step: n + 1,
                value: next,
            });
        }
        u.push(next);
        f_hist.push((problem.rhs)(t_next, next));
    }

    SampledTrajectory::new(grid, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::{mittag_leffler, SeriesControl};
    use approx::assert_relative_eq;

    fn unit_grid(n: usize) -> UniformGrid {
        UniformGrid::new(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn weights_at_order_one() {
        let w = abm_weights(1.0, 4, 0.1).unwrap();
        for b in &w.predictor {
            assert_relative_eq!(*b, 0.1, max_relative = 1e-14);
        }
        let expect = [0.05, 0.1, 0.1, 0.1, 0.1, 0.05];
        assert_eq!(w.corrector.len(), expect.len());
        for (a, e) in w.corrector.iter().zip(expect) {
            assert_relative_eq!(*a, e, max_relative = 1e-13);
        }
    }

    #[test]
    fn first_predictor_weight() {
        let w = abm_weights(0.6, 0, 0.1).unwrap();
        assert_relative_eq!(w.predictor[0], 0.1f64.powf(0.6) / 0.6, max_relative = 1e-14);
        assert!((w.predictor[0] - 0.418648).abs() < 1e-6);
        // Inside the solver the weight carries 1/Γ(α): dt^α / Γ(α + 1).
        let t = WeightTable::new(0.6, 0, 0.1, 1.0 / gamma(0.6).unwrap());
        assert_relative_eq!(
            t.rect(0),
            0.1f64.powf(0.6) / gamma(1.6).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn weights_positive() {
        for alpha in [0.1, 0.35, 0.6, 0.9, 1.0] {
            for n in [0, 1, 5, 40] {
                let w = abm_weights(alpha, n, 0.05).unwrap();
                assert!(w.predictor.iter().all(|&b| b > 0.0));
                assert!(w.corrector.iter().all(|&a| a > 0.0), "alpha {alpha} n {n}");
            }
        }
    }

    #[test]
    fn weights_reject_bad_order() {
        assert!(abm_weights(0.0, 3, 0.1).is_err());
        assert!(abm_weights(1.01, 3, 0.1).is_err());
    }

    #[test]
    fn exponential_growth_at_order_one() {
        let p = FodeProblem::new(1.0, 1.0, |_, x| x, unit_grid(1000)).unwrap();
        let u = fabm_solve(&p, 1).unwrap();
        assert!((u.values()[1000] - std::f64::consts::E).abs() < 1e-3);
    }

    #[test]
    fn zero_rhs_keeps_initial_value() {
        for alpha in [0.3, 0.6, 1.0] {
            let p = FodeProblem::new(alpha, 2.5, |_, _| 0.0, unit_grid(50)).unwrap();
            let u = fabm_solve(&p, 1).unwrap();
            assert!(u.values().iter().all(|&v| v == 2.5));
        }
    }

    #[test]
    fn relaxation_matches_mittag_leffler() {
        // D^0.6 x = -x, x(0) = 1  =>  x(t) = E_0.6(-t^0.6)
        let p = FodeProblem::new(0.6, 1.0, |_, x| -x, unit_grid(1000)).unwrap();
        let u = fabm_solve(&p, 1).unwrap();
        let exact = mittag_leffler(0.6, 1.0, -1.0, &SeriesControl::default()).unwrap();
        assert!((u.values()[1000] - exact).abs() < 2e-3);
    }

    #[test]
    fn initial_condition_is_exact() {
        let x0 = 38.689_6_f64;
        let p =
            FodeProblem::new(0.6, x0, |_, x| 0.71 * x * (1.0 - x / 80.5), unit_grid(10)).unwrap();
        let u = fabm_solve(&p, 2).unwrap();
        assert_eq!(u.values()[0].to_bits(), x0.to_bits());
    }

    #[test]
    fn refinement_order() {
        let ctl = SeriesControl::default();
        for alpha in [0.6, 0.8, 1.0] {
            let exact = mittag_leffler(alpha, 1.0, -1.0, &ctl).unwrap();
            let err = |n: usize| {
                let p = FodeProblem::new(alpha, 1.0, |_, x| -x, unit_grid(n)).unwrap();
                (fabm_solve(&p, 1).unwrap().values()[n] - exact).abs()
            };
            let ratio = err(200) / err(400);
            let bound = 2f64.powf((1.0 + alpha).min(2.0)) * 0.8;
            assert!(ratio >= bound, "alpha {alpha}: ratio {ratio} < {bound}");
        }
    }

    #[test]
    fn divergence_is_reported() {
        let p = FodeProblem::new(
            1.0,
            1.0,
            |_, x| x * x,
            UniformGrid::new(0.0, 5.0, 500).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            fabm_solve(&p, 1),
            Err(HarvestError::Divergence { .. })
        ));
    }

    #[test]
    fn rejects_zero_corrector_iterations() {
        let p = FodeProblem::new(0.5, 1.0, |_, x| -x, unit_grid(10)).unwrap();
        assert!(fabm_solve(&p, 0).is_err());
        assert!(FodeProblem::new(0.0, 1.0, |_: f64, x: f64| -x, unit_grid(10)).is_err());
    }
}
