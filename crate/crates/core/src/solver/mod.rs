//! Fixed points of `T_lambda` in cone annuli, with independent residual checks.
//!
//! [`picard_solve`] finds attracting fixed points, [`residual_solve`] (Newton on
//! `T u - u`) finds repelling ones. [`solve`] runs both from a spread of starts and merges
//! the results; [`ode_residual`] and [`poincare_check`] test a candidate against the ODE
//! directly.

mod annulus;
mod integrate;
mod multistart;
mod newton;
mod picard;
mod residuals;
mod sweep;

pub use annulus::Annulus;
pub use multistart::{initial_guesses, solve, SolutionRecord, SolveOptions, SolveReport, StartOutcome};
pub use newton::{residual_solve, NewtonOptions};
pub use picard::{picard_solve, Diagnostics, Method, PicardOptions};
pub use residuals::{ode_residual, ode_residual_forced, poincare_check, poincare_check_forced};
pub use sweep::{lambda_grid, lambda_sweep, SweepRow};
