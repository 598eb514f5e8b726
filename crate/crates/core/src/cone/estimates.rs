//! Executable forms of the operator estimates: cone invariance, the lower bound
//! `||T u|| >= lambda Gamma eta ||u||`, the upper bound `||T u|| <= lambda chi eps ||u||`,
//! and the shell bounds `lambda Gamma/sigma m(r) <= ||T u|| <= lambda chi M(r)`.

use crate::error::{Error, Result};
use crate::kernel::GridFunction;

use super::{annulus_stats, cone_check, f_hat, AnnulusStats, ConeMembership, ConeOperator};

/// Slack allowed on every sampled inequality.
pub const INEQUALITY_TOLERANCE: f64 = 1e-8;

/// One sampled inequality `lhs >= rhs` (or `<=`, per `kind`).
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// Set when a violation is attributable to the sampled `M`/`m` estimates.
    pub note: Option<String>,
}

impl InequalityCheck {
    fn at_least(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            holds: lhs >= rhs - INEQUALITY_TOLERANCE,
            note: None,
        }
    }

    fn at_most(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            holds: lhs <= rhs + INEQUALITY_TOLERANCE,
            note: None,
        }
    }
}

/// Cone membership of `T u`.
pub fn check_cone_mapping(op: &ConeOperator, u: &GridFunction) -> Result<ConeMembership> {
    Ok(cone_check(&op.apply(u)?, op.constants()))
}

/// `eta = min_t min_i f_i(u(t)) / sum_j u_j(t)`.
pub fn pointwise_growth_ratio(op: &ConeOperator, u: &GridFunction) -> f64 {
    let f = op.spec().f();
    let mut state = vec![0.0; u.n()];
    let mut eta = f64::INFINITY;
    for k in 0..u.m() {
        u.state_into(k, &mut state);
        let total: f64 = state.iter().sum();
        for i in 0..u.n() {
            eta = eta.min(f.eval(i, &state) / total);
        }
    }
    eta
}

/// `||T u|| >= lambda Gamma eta ||u||` with `eta` from [`pointwise_growth_ratio`].
pub fn check_lower_estimate(op: &ConeOperator, u: &GridFunction) -> Result<InequalityCheck> {
    let eta = pointwise_growth_ratio(op, u);
    let tu = op.apply(u)?;
    let c = op.constants();
    Ok(InequalityCheck::at_least(
        "||Tu|| >= lambda Gamma eta ||u||",
        tu.norm(),
        op.lambda() * c.gamma * eta * u.norm(),
    ))
}

/// `||T u|| <= lambda chi eps ||u||` on `||u|| = r > 1/sigma`, with `eps = max_i f_hat_i(r) / r`.
pub fn check_upper_estimate(op: &ConeOperator, u: &GridFunction, budget: usize) -> Result<InequalityCheck> {
    let c = op.constants();
    let r = u.norm();
    if !(r > 1.0 / c.sigma) {
        return Err(Error::Domain(format!("upper estimate needs r > 1/sigma = {}, got {r}", 1.0 / c.sigma)));
    }
    let fh = f_hat(r, op.spec().f(), op.n(), budget)?;
    let eps = fh.iter().copied().fold(0.0, f64::max) / r;
    let tu = op.apply(u)?;
    Ok(InequalityCheck::at_most(
        "||Tu|| <= lambda chi eps ||u||",
        tu.norm(),
        op.lambda() * c.chi * eps * r,
    ))
}

/// Both shell bounds for `u` on `||u|| = r`, using sampled `m(r)`, `M(r)`.
pub fn check_annulus_bounds(op: &ConeOperator, u: &GridFunction, stats: &AnnulusStats) -> Result<[InequalityCheck; 2]> {
    let c = op.constants();
    let lambda = op.lambda();
    let tu = op.apply(u)?.norm();
    let mut lower = InequalityCheck::at_least("||Tu|| >= lambda Gamma/sigma m(r)", tu, lambda * c.gamma / c.sigma * stats.min);
    let mut upper = InequalityCheck::at_most("||Tu|| <= lambda chi M(r)", tu, lambda * c.chi * stats.max);
    for chk in [&mut lower, &mut upper] {
        if !chk.holds {
            chk.note = Some(format!(
                "violation with {} samples: M/m estimate likely under-resolved",
                stats.sample_count
            ));
        }
    }
    Ok([lower, upper])
}

/// Convenience: [`check_annulus_bounds`] with freshly sampled statistics at `r = ||u||`.
pub fn check_annulus_bounds_sampled(op: &ConeOperator, u: &GridFunction, budget: usize) -> Result<[InequalityCheck; 2]> {
    let stats = annulus_stats(u.norm(), op.spec().f(), op.constants().sigma, op.n(), budget)?;
    check_annulus_bounds(op, u, &stats)
}
