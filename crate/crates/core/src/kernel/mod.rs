//! The analytic substrate of the operator: `sigma_i`, the Green's kernel and periodic quadrature.

mod green;
mod grid;
mod quadrature;

pub(crate) use green::exponential_moments;
pub use green::{compute_constants, compute_sigma, ConeConstants, PeriodicKernel};
pub use grid::GridFunction;
pub use quadrature::{periodic_quadrature, MIN_GRID};

/// Default grid size.
pub const DEFAULT_GRID: usize = 128;
