use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarvestError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarvestError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {max_terms} terms (last term {last_term:e})")]
    NonConvergence { max_terms: usize, last_term: f64 },

    /// Sample sequence has the wrong length for its grid or the operation.
    #[error("shape error: {0}")]
    Shape(String),

    #[error(
        "no equilibrium: harvest {harvest} is at or above the maximum sustainable yield {msy}"
    )]
    NoEquilibrium { harvest: f64, msy: f64 },

    #[error("anchor {x_ref} sits on the lower equilibrium {x_minus}")]
    AnchorAtSingularity { x_ref: f64, x_minus: f64 },

    #[error("anchor {x_ref} is below the lower equilibrium {x_minus} (collapse regime)")]
    AnchorBelowEquilibrium { x_ref: f64, x_minus: f64 },

    #[error("target {target} is not bracketed by arc values [{lo}, {hi}]")]
    NoCrossing { target: f64, lo: f64, hi: f64 },

    #[error("infeasible scenario: singular harvest {singular_harvest} violates h_min <= K(r^2 - delta^2)/(4r) <= h_max with h_min = {h_min}, h_max = {h_max}")]
    Infeasible {
        singular_harvest: f64,
        h_min: f64,
        h_max: f64,
    },

    #[error("no nearest feasible path: {0}")]
    InfeasiblePath(String),

    #[error("solver diverged at step {step}: u = {value:e}")]
    Divergence { step: usize, value: f64 },
}

impl HarvestError {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            HarvestError::NonConvergence { .. } | HarvestError::Divergence { .. }
        )
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(HarvestError::Domain(msg.into()))
}
