//! Uniform time grids and trajectories sampled on them.

use crate::error::{domain, HarvestError, Result};

/// Regular partition `t_k = t_start + k * dt`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    t_start: f64,
    t_end: f64,
    n_steps: usize,
}

impl UniformGrid {
    pub fn new(t_start: f64, t_end: f64, n_steps: usize) -> Result<Self> {
        if !t_start.is_finite() || !t_end.is_finite() {
            return domain("grid endpoints must be finite");
        }
        if t_end <= t_start {
            return domain(format!("grid end {t_end} must exceed start {t_start}"));
        }
        if n_steps == 0 {
            return domain("grid needs at least one step");
        }
        Ok(UniformGrid {
            t_start,
            t_end,
            n_steps,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Number of nodes, `n_steps + 1`.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.n_steps as f64
    }

    /// Node `k`. The last node is returned as `t_end` exactly.
    pub fn node(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_end
        } else {
            self.t_start + k as f64 * self.dt()
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.node(k))
    }
}

/// Values of a scalar function on the nodes of a [`UniformGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTrajectory {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl SampledTrajectory {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(HarvestError::Shape(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(HarvestError::Shape(format!(
                "non-finite sample {} at node {k}",
                values[k]
            )));
        }
        Ok(SampledTrajectory { grid, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: UniformGrid, f: impl FnMut(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().map(f).collect();
        Self::new(grid, values)
    }

    /// Samples a fallible `f` at every node, stopping at the first error.
    pub fn try_from_fn(grid: UniformGrid, f: impl FnMut(f64) -> Result<f64>) -> Result<Self> {
        let values = grid.nodes().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(t_k, value_k)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.nodes().zip(self.values.iter().copied())
    }

    /// Values in reverse node order on the same grid, i.e. `t -> t_start + t_end - t`.
    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        SampledTrajectory {
            grid: self.grid,
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(UniformGrid::new(0.0, 0.0, 10).is_err());
        assert!(UniformGrid::new(1.0, 0.0, 10).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 0).is_err());
        assert!(UniformGrid::new(0.0, f64::INFINITY, 4).is_err());
    }

    #[test]
    fn nodes_hit_both_ends() {
        let g = UniformGrid::new(0.0, 10.0, 3).unwrap();
        let t: Vec<f64> = g.nodes().collect();
        assert_eq!(t.len(), 4);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[3], 10.0);
        assert!((g.dt() - 10.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn trajectory_shape_checked() {
        let g = UniformGrid::new(0.0, 1.0, 2).unwrap();
        assert!(matches!(
            SampledTrajectory::new(g, vec![1.0, 2.0]),
            Err(HarvestError::Shape(_))
        ));
        assert!(SampledTrajectory::new(g, vec![1.0, f64::NAN, 2.0]).is_err());
        let tr = SampledTrajectory::new(g, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(tr.reversed().values(), &[3.0, 2.0, 1.0]);
    }
}
