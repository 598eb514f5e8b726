//! Positive periodic solutions of singular first-order systems
//!
//! ```text
//! x_i'(t) = -a_i(t) x_i(t) + lambda b_i(t) f_i(x(t)),   i = 1..n,
//! ```
//!
//! with `omega`-periodic `a_i, b_i >= 0` and `f_i` positive on `R_+^n \ {0}`, possibly
//! blowing up as `|x| -> 0`. Periodic solutions are the fixed points, in the cone
//! `K = { u : u_i(t) >= sigma_i sup |u_i| }`, of the integral operator
//!
//! ```text
//! (T_lambda u)_i(t) = lambda int_t^{t+omega} G_i(t,s) b_i(s) f_i(u(s)) ds,
//! G_i(t,s) = exp(int_t^s a_i) / (exp(int_0^omega a_i) - 1).
//! ```
//!
//! The crate is organized bottom-up:
//!
//! - [`model`]: coefficients, nonlinearities, problem instances and hypothesis checks.
//! - [`kernel`]: `sigma_i`, the Green's kernel, structural constants, grid functions.
//! - [`cone`]: the operator, cone membership, sampled `M(r)`, `m(r)`, `f_hat`.
//! - [`certify`]: radii and constants witnessing each existence case, plus the forcing split.
//! - [`solver`]: fixed-point solvers, residual checks, time-integration cross-check, sweeps.
//! - [`cli`]: config parsing, batch commands, CSV and certificate output.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example sublinear_solve` is a
//! good place to start.

// `!(x > y)` is how NaN gets rejected throughout
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod certify;
pub mod cli;
pub mod cone;
mod error;
pub mod kernel;
pub mod model;
pub mod solver;
mod spectral;

pub use error::{Error, Result};
