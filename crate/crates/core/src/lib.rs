//! Optimal harvesting of a logistic resource, with classical and Caputo
//! fractional dynamics.
//!
//! The crate covers the classical singular solution and its nearest feasible
//! path, the fractional optimal state and harvest, and the numerics both
//! depend on: Gamma and Mittag-Leffler functions, the L1 Caputo scheme and a
//! fractional Adams predictor-corrector.

pub mod classical_control;
pub mod economics;
pub mod error;
pub mod fode_solver;
pub mod fractional_control;
pub mod fractional_operators;
pub mod grid;
pub mod logistic_dynamics;
pub mod special_functions;

pub use classical_control::{PiecewiseSolution, ScenarioParams};
pub use economics::ProfitReport;
pub use error::{HarvestError, Result};
pub use fractional_control::FractionalScenario;
pub use grid::{SampledTrajectory, UniformGrid};
pub use logistic_dynamics::{ConstantHarvestSolution, HarvestArc, LogisticParams, StateArc};
pub use special_functions::SeriesControl;
