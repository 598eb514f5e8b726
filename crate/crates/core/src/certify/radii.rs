//! Radius searches behind the existence certificates.

use crate::cone::{annulus_stats, f_hat, log_radii, ConeOperator, Sense, ShellSearch};
use crate::error::{Error, Result};

/// Relative margin by which `lambda Gamma eta > 1` and `lambda eps chi < 1` must hold.
pub const STRICTNESS_MARGIN: f64 = 0.05;

/// Shells below `r * INNER_DEPTH` are not sampled by the inner search.
const INNER_DEPTH: f64 = 1e-8;

/// A shell `0 < |u| <= r` on which `f_i(u) >= eta |u|` for some component.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerRadius {
    pub r: f64,
    pub eta: f64,
    pub component: usize,
}

/// An outer radius with `f_hat_i(r) <= eps r` for every component.
#[derive(Clone, Debug, PartialEq)]
pub struct SublinearRadius {
    pub r: f64,
    pub epsilon: f64,
    pub f_hat: Vec<f64>,
}

/// A threshold `H` with `f_i(u) >= eta |u|` for `|u| >= H`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperlinearThreshold {
    pub h_hat: f64,
    pub eta: f64,
    pub component: usize,
}

/// Required `eta` so that `lambda Gamma eta >= 1 + margin`.
pub fn eta_target(op: &ConeOperator, lambda: f64) -> f64 {
    (1.0 + STRICTNESS_MARGIN) / (lambda * op.constants().gamma)
}

/// Required `eps` so that `lambda eps chi <= 1 - margin`.
pub fn epsilon_target(op: &ConeOperator, lambda: f64) -> f64 {
    (1.0 - STRICTNESS_MARGIN) / (lambda * op.constants().chi)
}

/// Best component's sampled `min f_i(u)/|u|` over `lo <= |u| <= hi`.
fn best_min_ratio(op: &ConeOperator, lo: f64, hi: f64, budget: usize) -> Result<(f64, usize)> {
    let f = op.spec().f();
    let n = op.n();
    let score = |i: usize, u: &[f64], rho: f64| f.eval(i, u) / rho;
    let radial = if n == 1 || f.is_radial() { budget.max(2) } else { 64 };
    let radii = log_radii(lo, hi, radial);
    let mut best = (f64::NEG_INFINITY, 0);
    for i in 0..n {
        let (ext, _) = ShellSearch {
            f,
            n,
            components: vec![i],
            budget,
            sense: Sense::Min,
        }
        .run(&score, &radii)?;
        if ext.value > best.0 {
            best = (ext.value, i);
        }
    }
    Ok(best)
}

/// Scans `r = cap * 10^{-k/10}`, `k = 0..=120`, for the largest shell on which some
/// component satisfies `f_i(u)/|u| >= (1 + margin) / (lambda Gamma)`.
///
/// Returns `Ok(None)` when twelve decades are exhausted without success.
pub fn find_inner_radius(op: &ConeOperator, lambda: f64, cap: f64, budget: usize) -> Result<Option<InnerRadius>> {
    if !(cap > 0.0 && lambda > 0.0) {
        return Err(Error::Domain(format!("need cap > 0 and lambda > 0, got {cap}, {lambda}")));
    }
    let target = eta_target(op, lambda);
    for k in 0..=120 {
        let r = cap * 10f64.powf(-(k as f64) / 10.0);
        let (eta, component) = best_min_ratio(op, r * INNER_DEPTH, r, budget)?;
        if eta >= target {
            return Ok(Some(InnerRadius { r, eta, component }));
        }
    }
    Ok(None)
}

/// Doubles `r` from just above `max(2 r1, 1/sigma)` until
/// `max_i f_hat_i(r) / r <= (1 - margin) / (lambda chi)`; gives up after 40 doublings.
pub fn find_outer_radius_sublinear(
    op: &ConeOperator,
    lambda: f64,
    r1: f64,
    budget: usize,
) -> Result<Option<SublinearRadius>> {
    let target = epsilon_target(op, lambda);
    // strictly above the base so that r2 > max(2 r1, 1/sigma) holds in floating point
    let base = (2.0 * r1).max(1.0 / op.constants().sigma) * (1.0 + 1e-9);
    for k in 0..=40 {
        let r = base * 2f64.powi(k);
        let fh = f_hat(r, op.spec().f(), op.n(), budget)?;
        let epsilon = fh.iter().copied().fold(0.0, f64::max) / r;
        if epsilon <= target {
            return Ok(Some(SublinearRadius { r, epsilon, f_hat: fh }));
        }
    }
    Ok(None)
}

/// Doubles `H` from 1 until the sampled `min f_i(u)/|u|` on `H <= |u| <= 1000 H` reaches
/// `(1 + margin) / (lambda Gamma)`, then bisects back toward the smallest such `H`.
pub fn find_outer_radius_superlinear(
    op: &ConeOperator,
    lambda: f64,
    budget: usize,
) -> Result<Option<SuperlinearThreshold>> {
    let target = eta_target(op, lambda);
    let probe = |h: f64| best_min_ratio(op, h, 1e3 * h, budget);
    let mut found = None;
    for k in 0..=40 {
        let h = 2f64.powi(k);
        let (eta, component) = probe(h)?;
        if eta >= target {
            found = Some((k, SuperlinearThreshold { h_hat: h, eta, component }));
            break;
        }
    }
    let Some((k, mut best)) = found else {
        return Ok(None);
    };
    if k > 0 {
        let (mut lo, mut hi) = (best.h_hat / 2.0, best.h_hat);
        while hi - lo > 1e-9 * hi {
            let mid = 0.5 * (lo + hi);
            let (eta, component) = probe(mid)?;
            if eta >= target {
                hi = mid;
                best = SuperlinearThreshold { h_hat: mid, eta, component };
            } else {
                lo = mid;
            }
        }
    }
    Ok(Some(best))
}

/// `lambda_0 = r1 / (chi M(r1))`: for `lambda < lambda_0`, `||T u|| < ||u||` on `||u|| = r1`.
pub fn small_lambda_bound(op: &ConeOperator, r1: f64, budget: usize) -> Result<f64> {
    let c = op.constants();
    let stats = annulus_stats(r1, op.spec().f(), c.sigma, op.n(), budget)?;
    lambda_bound_from(r1, c.chi, stats.max)
}

pub(crate) fn lambda_bound_from(r1: f64, chi: f64, m_r1: f64) -> Result<f64> {
    if !m_r1.is_finite() || m_r1 <= 0.0 {
        return Err(Error::Evaluation {
            what: format!("M({r1}) = {m_r1}"),
            t: 0.0,
        });
    }
    Ok(r1 / (chi * m_r1))
}
