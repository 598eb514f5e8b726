//! The cone `K`, the operator `T_lambda`, and sampled statistics of the nonlinearity.

pub mod estimates;
mod membership;
mod operator;
mod sampling;

pub use membership::{cone_check, cone_tolerance, ConeMembership};
pub use operator::{apply_operator, ConeOperator, SINGULARITY_FLOOR};
pub use sampling::{annulus_stats, f_hat, random_cone_element, AnnulusStats, ShellExtremum};

pub(crate) use sampling::{log_radii, Sense, ShellSearch};
