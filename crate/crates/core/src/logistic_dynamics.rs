//! Logistic growth with constant harvest, `x' = r x (1 - x/K) - h`.
//!
//! For `h < rK/4` the right-hand side factors as `-(r/K)(x - x₋)(x - x₊)`
//! and every solution not starting on `x₋` has the closed form
//!
//! ```text
//! x(t) = (c·x₋ + x₊·e^{λt}) / (c + e^{λt}),   λ = (r/K)(x₊ - x₋)
//! ```
//!
//! with `c` fixed by one anchor point.

use crate::error::{domain, HarvestError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub r: f64,
    pub k: f64,
}

impl LogisticParams {
    pub fn new(r: f64, k: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return domain(format!("growth rate r must be positive, got {r}"));
        }
        if !(k > 0.0 && k.is_finite()) {
            return domain(format!("carrying capacity K must be positive, got {k}"));
        }
        Ok(LogisticParams { r, k })
    }

    /// Maximum sustainable yield `rK/4`.
    pub fn msy(&self) -> f64 {
        self.r * self.k / 4.0
    }
}

/// Closed-form arc of the logistic equation under constant harvest
/// `h < rK/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantHarvestSolution {
    pub x_minus: f64,
    pub x_plus: f64,
    pub lambda: f64,
    pub c: f64,
    /// Harvest rate the arc was solved for.
    pub harvest: f64,
    /// Open time interval on which the arc stays finite. Unbounded unless
    /// the anchor lies outside `[x₋, x₊]`.
    pub lifespan: (f64, f64),
}

impl ConstantHarvestSolution {
    /// Numerator constant `c·x₋` of the displayed form.
    pub fn c_times_x_minus(&self) -> f64 {
        self.c * self.x_minus
    }
}

/// Any solution of `x' = r x (1 - x/K) - h` with constant `h ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HarvestArc {
    /// `h < rK/4`, anchored off the equilibria.
    Logistic(ConstantHarvestSolution),
    /// Resting on an equilibrium.
    Equilibrium { state: f64, harvest: f64 },
    /// `h > rK/4`: `x = K/2 + q·tan(φ - ω(t - t_ref))`, strictly decreasing.
    Overharvest {
        centre: f64,
        q: f64,
        omega: f64,
        phase: f64,
        t_ref: f64,
        harvest: f64,
    },
    /// `h = rK/4`: `x = K/2 + 1/(1/y_ref + (r/K)(t - t_ref))`.
    Critical {
        centre: f64,
        inv_y_ref: f64,
        rate: f64,
        t_ref: f64,
        harvest: f64,
    },
}

/// A monotone state trajectory with a constant harvest.
pub trait StateArc {
    fn eval(&self, t: f64) -> f64;
    fn harvest(&self) -> f64;
    /// Open interval on which [`StateArc::eval`] follows this solution.
    fn lifespan(&self) -> (f64, f64);
}

impl StateArc for ConstantHarvestSolution {
    fn eval(&self, t: f64) -> f64 {
        eval_arc(self, t)
    }

    fn harvest(&self) -> f64 {
        self.harvest
    }

    fn lifespan(&self) -> (f64, f64) {
        self.lifespan
    }
}

impl StateArc for HarvestArc {
    fn eval(&self, t: f64) -> f64 {
        match *self {
            HarvestArc::Logistic(ref s) => eval_arc(s, t),
            HarvestArc::Equilibrium { state, .. } => state,
            HarvestArc::Overharvest {
                centre,
                q,
                omega,
                phase,
                t_ref,
                ..
            } => centre + q * (phase - omega * (t - t_ref)).tan(),
            HarvestArc::Critical {
                centre,
                inv_y_ref,
                rate,
                t_ref,
                ..
            } => centre + 1.0 / (inv_y_ref + rate * (t - t_ref)),
        }
    }

    fn harvest(&self) -> f64 {
        match *self {
            HarvestArc::Logistic(ref s) => s.harvest,
            HarvestArc::Equilibrium { harvest, .. }
            | HarvestArc::Overharvest { harvest, .. }
            | HarvestArc::Critical { harvest, .. } => harvest,
        }
    }

    fn lifespan(&self) -> (f64, f64) {
        use std::f64::consts::FRAC_PI_2;
        match *self {
            HarvestArc::Logistic(ref s) => s.lifespan,
            HarvestArc::Equilibrium { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            HarvestArc::Overharvest {
                omega,
                phase,
                t_ref,
                ..
            } => (
                t_ref - (FRAC_PI_2 - phase) / omega,
                t_ref + (phase + FRAC_PI_2) / omega,
            ),
            HarvestArc::Critical {
                inv_y_ref,
                rate,
                t_ref,
                ..
            } => {
                let t_pole = t_ref - inv_y_ref / rate;
                if inv_y_ref > 0.0 {
                    (t_pole, f64::INFINITY)
                } else {
                    (f64::NEG_INFINITY, t_pole)
                }
            }
        }
    }
}

pub fn rhs(p: &LogisticParams, h: f64, _t: f64, x: f64) -> f64 {
    p.r * x * (1.0 - x / p.k) - h
}

/// Roots `x₋ < x₊` of the harvested right-hand side.
pub fn equilibria(p: &LogisticParams, h: f64) -> Result<(f64, f64)> {
    check_harvest(h)?;
    let disc = 1.0 - 4.0 * h / (p.r * p.k);
    if disc <= 0.0 {
        return Err(HarvestError::NoEquilibrium {
            harvest: h,
            msy: p.msy(),
        });
    }
    let s = disc.sqrt();
    let half = p.k / 2.0;
    // x₋ = (K/2)(1 - s) loses digits for small h; use x₋·x₊ = hK/r instead.
    let x_plus = half * (1.0 + s);
    let x_minus = h * p.k / (p.r * x_plus);
    Ok((x_minus, x_plus))
}

fn check_harvest(h: f64) -> Result<()> {
    if !(h >= 0.0 && h.is_finite()) {
        return domain(format!("harvest must be finite and non-negative, got {h}"));
    }
    Ok(())
}

fn check_anchor(t_ref: f64, x_ref: f64) -> Result<()> {
    if !(x_ref.is_finite() && t_ref.is_finite()) {
        return domain(format!("anchor ({t_ref}, {x_ref}) must be finite"));
    }
    Ok(())
}

/// Two-equilibrium arc through any anchor other than `x₋`.
fn two_root_arc(
    p: &LogisticParams,
    h: f64,
    (x_minus, x_plus): (f64, f64),
    t_ref: f64,
    x_ref: f64,
) -> ConstantHarvestSolution {
    let lambda = p.r / p.k * (x_plus - x_minus);
    // From x_ref (c + e) = c x₋ + x₊ e with e = e^{λ t_ref}.
    let c = (lambda * t_ref).exp() * (x_plus - x_ref) / (x_ref - x_minus);
    let lifespan = if c >= 0.0 {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        let t_pole = (-c).ln() / lambda;
        if x_ref > x_plus {
            (t_pole, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, t_pole)
        }
    };
    ConstantHarvestSolution {
        x_minus,
        x_plus,
        lambda,
        c,
        harvest: h,
        lifespan,
    }
}

/// The arc through `(t_ref, x_ref)` under constant harvest `h < rK/4`, for
/// anchors above the lower equilibrium.
pub fn solve_constant_harvest(
    p: &LogisticParams,
    h: f64,
    t_ref: f64,
    x_ref: f64,
) -> Result<ConstantHarvestSolution> {
    let roots = equilibria(p, h)?;
    check_anchor(t_ref, x_ref)?;
    let x_minus = roots.0;
    if x_ref == x_minus {
        return Err(HarvestError::AnchorAtSingularity { x_ref, x_minus });
    }
    if x_ref < x_minus {
        return Err(HarvestError::AnchorBelowEquilibrium { x_ref, x_minus });
    }
    Ok(two_root_arc(p, h, roots, t_ref, x_ref))
}

/// The solution through `(t_ref, x_ref)` for any constant harvest, including
/// harvests at or above the maximum sustainable yield and anchors below `x₋`.
pub fn solve_harvest_arc(p: &LogisticParams, h: f64, t_ref: f64, x_ref: f64) -> Result<HarvestArc> {
    check_harvest(h)?;
    check_anchor(t_ref, x_ref)?;
    match equilibria(p, h) {
        Ok((x_minus, x_plus)) => {
            if x_ref == x_minus || x_ref == x_plus {
                Ok(HarvestArc::Equilibrium {
                    state: x_ref,
                    harvest: h,
                })
            } else {
                Ok(HarvestArc::Logistic(two_root_arc(
                    p,
                    h,
                    (x_minus, x_plus),
                    t_ref,
                    x_ref,
                )))
            }
        }
        Err(HarvestError::NoEquilibrium { .. }) => {
            let centre = p.k / 2.0;
            let y_ref = x_ref - centre;
            let q2 = p.k / p.r * (h - p.msy());
            if q2 > 0.0 {
                let q = q2.sqrt();
                Ok(HarvestArc::Overharvest {
                    centre,
                    q,
                    omega: p.r * q / p.k,
                    phase: (y_ref / q).atan(),
                    t_ref,
                    harvest: h,
                })
            } else if y_ref == 0.0 {
                Ok(HarvestArc::Equilibrium {
                    state: x_ref,
                    harvest: h,
                })
            } else {
                Ok(HarvestArc::Critical {
                    centre,
                    inv_y_ref: 1.0 / y_ref,
                    rate: p.r / p.k,
                    t_ref,
                    harvest: h,
                })
            }
        }
        Err(e) => Err(e),
    }
}

pub fn eval_arc(sol: &ConstantHarvestSolution, t: f64) -> f64 {
    // Written as x₊ + c(x₋ - x₊)/(c + e^{λt}) it stays finite for large λt.
    let e = (sol.lambda * t).exp();
    if e.is_infinite() {
        return sol.x_plus;
    }
    sol.x_plus + sol.c * (sol.x_minus - sol.x_plus) / (sol.c + e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn halibut() -> LogisticParams {
        LogisticParams::new(0.71, 80.5).unwrap()
    }

    #[test]
    fn rhs_values() {
        let p = halibut();
        assert_eq!(rhs(&p, 0.0, 0.0, 80.5), 0.0);
        assert!(rhs(&p, 10.0, 0.0, 62.3013).abs() < 1e-3);
        assert!((rhs(&p, 0.0, 3.0, 40.25) - p.r * p.k / 4.0).abs() < 1e-12);
    }

    #[test]
    fn equilibria_of_approach_arc() {
        let (lo, hi) = equilibria(&halibut(), 10.0).unwrap();
        assert!((hi - 62.3013).abs() < 1e-3);
        assert!((lo - 20.9703 / 1.1523).abs() < 1e-3);
        assert!((lo - 18.199).abs() < 1e-3);
    }

    #[test]
    fn equilibria_without_harvest() {
        let (lo, hi) = equilibria(&halibut(), 0.0).unwrap();
        assert_eq!(lo, 0.0);
        assert_eq!(hi, 80.5);
    }

    #[test]
    fn equilibria_merge_at_msy() {
        let p = halibut();
        let (lo, hi) = equilibria(&p, p.msy() - 1e-9).unwrap();
        assert!((lo - 40.25).abs() < 1e-2 && (hi - 40.25).abs() < 1e-2);
        assert!(matches!(
            equilibria(&p, p.msy()),
            Err(HarvestError::NoEquilibrium { .. })
        ));
        assert!(equilibria(&p, 15.0).is_err());
        assert!(equilibria(&p, -1.0).is_err());
    }

    #[test]
    fn approach_arc_coefficients() {
        let a = solve_constant_harvest(&halibut(), 10.0, 0.0, 38.6896).unwrap();
        assert!((a.c_times_x_minus() - 20.9703).abs() < 5e-4);
        assert!((a.x_plus - 62.3013).abs() < 5e-4);
        assert!((a.lambda - 0.388979).abs() < 5e-6);
        assert!((a.c - 1.1523).abs() < 5e-4);
        assert!((eval_arc(&a, 0.0) - 38.6896).abs() < 1e-10);
        assert!((eval_arc(&a, 0.232235) - 39.6831).abs() < 1e-4);
    }

    #[test]
    fn exit_arc_coefficients() {
        let b = solve_constant_harvest(&halibut(), 10.0, 10.0, 40.25).unwrap();
        assert!((b.c - 48.9008).abs() < 5e-4);
        assert!((b.c_times_x_minus() - 889.931).abs() < 5e-3);
        assert!((eval_arc(&b, 10.0) - 40.25).abs() < 1e-10);
    }

    #[test]
    fn anchor_errors() {
        let p = halibut();
        let (lo, _) = equilibria(&p, 10.0).unwrap();
        assert!(matches!(
            solve_constant_harvest(&p, 10.0, 0.0, lo),
            Err(HarvestError::AnchorAtSingularity { .. })
        ));
        assert!(matches!(
            solve_constant_harvest(&p, 10.0, 0.0, lo - 1.0),
            Err(HarvestError::AnchorBelowEquilibrium { .. })
        ));
        assert!(matches!(
            solve_constant_harvest(&p, 14.5, 0.0, 40.0),
            Err(HarvestError::NoEquilibrium { .. })
        ));
    }

    #[test]
    fn arc_above_upper_equilibrium_decays() {
        let p = halibut();
        let a = solve_constant_harvest(&p, 10.0, 0.0, 75.0).unwrap();
        assert!(a.c < 0.0);
        let xs: Vec<f64> = (0..50).map(|i| eval_arc(&a, i as f64 * 0.5)).collect();
        assert!(xs.windows(2).all(|w| w[1] < w[0]));
        assert!(xs.iter().all(|&x| x > a.x_plus));
    }

    #[test]
    fn arc_converges_monotonically_to_upper_equilibrium() {
        let a = solve_constant_harvest(&halibut(), 10.0, 0.0, 38.6896).unwrap();
        let xs: Vec<f64> = (0..200).map(|i| eval_arc(&a, i as f64 * 0.5)).collect();
        assert!(xs.windows(2).all(|w| w[1] >= w[0]));
        assert!(xs.iter().all(|&x| x > a.x_minus && x < a.x_plus + 1e-12));
        assert!((xs[199] - a.x_plus).abs() < 1e-10);
        assert!((eval_arc(&a, 1e6) - a.x_plus).abs() < 1e-12);
    }

    #[test]
    fn arc_above_upper_equilibrium_has_past_pole() {
        let a = solve_constant_harvest(&halibut(), 10.0, 0.0, 75.0).unwrap();
        let (lo, hi) = a.lifespan;
        assert!(lo < 0.0 && hi.is_infinite());
        let b = solve_constant_harvest(&halibut(), 10.0, 0.0, 50.0).unwrap();
        assert_eq!(b.lifespan, (f64::NEG_INFINITY, f64::INFINITY));
    }

    #[test]
    fn general_arc_regimes() {
        let p = halibut();
        let below = solve_harvest_arc(&p, 10.0, 0.0, 15.0).unwrap();
        assert!(matches!(below, HarvestArc::Logistic(_)));
        let (_, pole) = below.lifespan();
        assert!(pole > 0.0 && pole.is_finite());
        assert!(below.eval(0.5 * pole) < 15.0);

        let (lo, hi) = equilibria(&p, 10.0).unwrap();
        for x in [lo, hi] {
            let eq = solve_harvest_arc(&p, 10.0, 3.0, x).unwrap();
            assert!(matches!(eq, HarvestArc::Equilibrium { .. }));
            assert_eq!(eq.eval(100.0), x);
        }

        let over = solve_harvest_arc(&p, 15.0, 0.0, 45.0).unwrap();
        assert!(matches!(over, HarvestArc::Overharvest { .. }));
        assert!((over.eval(0.0) - 45.0).abs() < 1e-12);
        assert_eq!(over.harvest(), 15.0);

        let crit = solve_harvest_arc(&p, p.msy(), 1.0, 45.0).unwrap();
        assert!(matches!(crit, HarvestArc::Critical { .. }));
        assert!((crit.eval(1.0) - 45.0).abs() < 1e-12);
        let rest = solve_harvest_arc(&p, p.msy(), 1.0, 40.25).unwrap();
        assert!(matches!(rest, HarvestArc::Equilibrium { .. }));
    }

    fn check_arc_ode(arc: &HarvestArc, p: &LogisticParams, t: f64) -> bool {
        let step = 1e-6;
        let fd = (arc.eval(t + step) - arc.eval(t - step)) / (2.0 * step);
        let exact = rhs(p, arc.harvest(), t, arc.eval(t));
        (fd - exact).abs() <= 1e-5 * exact.abs().max(1.0)
    }

    proptest! {
        #[test]
        fn general_arcs_solve_the_ode(h in 0.0f64..20.0, x_ref in 1.0f64..80.0, t in 0.0f64..2.0) {
            let p = halibut();
            let arc = solve_harvest_arc(&p, h, 0.0, x_ref).unwrap();
            let (lo, hi) = arc.lifespan();
            prop_assume!(t > lo + 0.05 && t < hi - 0.05);
            prop_assert!((arc.eval(0.0) - x_ref).abs() <= 1e-9 * x_ref.max(1.0));
            prop_assert!(check_arc_ode(&arc, &p, t));
        }

        #[test]
        fn arc_solves_the_ode(t in 0.0f64..10.0, x_ref in 19.0f64..80.0, h in 0.0f64..14.0) {
            let p = halibut();
            let (lo, _) = equilibria(&p, h).unwrap();
            prop_assume!(x_ref > lo + 0.5);
            let a = solve_constant_harvest(&p, h, 0.0, x_ref).unwrap();
            let step = 1e-6;
            let fd = (eval_arc(&a, t + step) - eval_arc(&a, t - step)) / (2.0 * step);
            let exact = rhs(&p, h, t, eval_arc(&a, t));
            prop_assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1.0));
        }

        #[test]
        fn anchor_is_reproduced(t_ref in -5.0f64..15.0, x_ref in 20.0f64..79.0) {
            let p = halibut();
            let a = solve_constant_harvest(&p, 10.0, t_ref, x_ref).unwrap();
            prop_assert!((eval_arc(&a, t_ref) - x_ref).abs() <= 1e-10);
        }
    }
}
