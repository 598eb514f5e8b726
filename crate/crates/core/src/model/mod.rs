//! Problem instances: periodic coefficients, singular nonlinearities and hypothesis checks.

mod coefficient;
mod nonlinearity;
mod system;
mod validate;

pub use coefficient::{CoefficientKind, Interpolation, PeriodicCoefficient};
pub use nonlinearity::{state_norm, AsymptoticProfile, CustomHook, Growth, Nonlinearity, PowerSum};
pub use system::SystemSpec;
pub use validate::{validate_h1, validate_h2, Validation, Violation, INTEGRAL_FLOOR};

pub(crate) use validate::random_simplex;
