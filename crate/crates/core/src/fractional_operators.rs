//! L1 discretisation of the left and right Caputo derivatives of order
//! `0 < α ≤ 1` on a uniform grid.
//!
//! The left derivative at node `m` is
//! `Σ_{k=0}^{m-1} b_{m-k-1} (f_{k+1} - f_k)` with
//! `b_k = dt^{-α} / Γ(2-α) · ((k+1)^{1-α} - k^{1-α})`.
//! The sum is empty at node 0, where the output is 0. The right derivative
//! is the left one applied to the time-reversed samples, reversed back; the
//! output is 0 at the last node.

pub use crate::grid::{SampledTrajectory, UniformGrid};

use crate::error::{domain, HarvestError, Result};
use crate::special_functions::gamma;

pub(crate) fn check_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return domain(format!("fractional order must lie in (0, 1], got {alpha}"));
    }
    Ok(())
}

/// L1 weights `b_0..b_{m-1}`.
pub fn l1_weights(alpha: f64, m: usize, dt: f64) -> Result<Vec<f64>> {
    check_order(alpha)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return domain(format!("step must be positive, got {dt}"));
    }
    let scale = dt.powf(-alpha) / gamma(2.0 - alpha)?;
    let e = 1.0 - alpha;
    // 0^{1-α} is taken as 0 for every α, including α = 1.
    let pow = |k: usize| if k == 0 { 0.0 } else { (k as f64).powf(e) };
    Ok((0..m).map(|k| scale * (pow(k + 1) - pow(k))).collect())
}

/// Left Caputo derivative of `f` at every node.
pub fn caputo_left_l1(f: &SampledTrajectory, alpha: f64) -> Result<SampledTrajectory> {
    check_order(alpha)?;
    let n = f.grid().n_steps();
    if f.len() < 2 {
        return Err(HarvestError::Shape("L1 needs at least two nodes".into()));
    }
    let weights = l1_weights(alpha, n, f.grid().dt())?;
    let diffs: Vec<f64> = f.values().windows(2).map(|w| w[1] - w[0]).collect();

    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    for m in 1..=n {
        // b_{m-k-1} pairs with diff k: walk the weights backwards.
        let s: f64 = diffs[..m]
            .iter()
            .zip(weights[..m].iter().rev())
            .map(|(d, b)| d * b)
            .sum();
        out.push(s);
    }
    SampledTrajectory::new(*f.grid(), out)
}

/// Right Caputo derivative (including the `(-1)^n` sign) by reflection.
pub fn caputo_right_l1(f: &SampledTrajectory, alpha: f64) -> Result<SampledTrajectory> {
    Ok(caputo_left_l1(&f.reversed(), alpha)?.reversed())
}
