//! Feasibility of the even split of a sign-changing forcing term.
//!
//! With forcing `e_i`, the integrand `b_i f_i(x) + e_i` is written as
//! `(1/2) b_i f_i(x) + ((1/2) b_i f_i(x) + e_i)`; the cone argument goes through on a
//! region where the second half stays nonnegative.

use serde::Serialize;

use crate::cone::{log_radii, Sense, ShellSearch};
use crate::error::{Error, Result};
use crate::kernel::compute_constants;
use crate::model::SystemSpec;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub ra: f64,
    pub rb: f64,
    /// Pointwise state norms examined: `sigma ra <= |x| <= rb`.
    pub shell: (f64, f64),
    /// `min_t (1/2) b_i(t) m_i + e_i(t)` per component, `m_i` the sampled minimum of `f_i`.
    pub min_split: Vec<f64>,
    /// Time at which each minimum is attained.
    pub argmin_t: Vec<f64>,
    pub feasible: bool,
}

/// Checks `(1/2) b_i(t) f_i(u(t)) + e_i(t) >= 0` for `u` in `K` with `ra <= ||u|| <= rb`.
///
/// Such `u` take pointwise values with `sigma ra <= |u(t)| <= rb`, and since `b_i >= 0`
/// the minimum over states separates from the minimum over `t`.
pub fn e_split_feasibility(spec: &SystemSpec, ra: f64, rb: f64, m: usize, budget: usize) -> Result<FeasibilityReport> {
    let e = spec
        .e()
        .ok_or_else(|| Error::Invalid("e_split_feasibility needs a forcing term e".into()))?;
    if !(ra > 0.0 && rb >= ra && rb.is_finite()) {
        return Err(Error::Domain(format!("need 0 < ra <= rb, got [{ra}, {rb}]")));
    }
    let sigma = compute_constants(spec, m)?.sigma;
    let (lo, hi) = (sigma * ra, rb);
    let f = spec.f();
    let n = spec.n();
    let radial = if n == 1 || f.is_radial() { budget.max(2) } else { 64 };
    let radii = log_radii(lo, hi, radial);
    let score = |i: usize, u: &[f64], _rho: f64| f.eval(i, u);
    let mut min_split = Vec::with_capacity(n);
    let mut argmin_t = Vec::with_capacity(n);
    for i in 0..n {
        let (fmin, _) = ShellSearch {
            f,
            n,
            components: vec![i],
            budget,
            sense: Sense::Min,
        }
        .run(&score, &radii)?;
        let (b, ei) = (&spec.b()[i], &e[i]);
        let (mut best, mut at) = (f64::INFINITY, 0.0);
        for k in 0..m {
            let t = spec.omega() * k as f64 / m as f64;
            let v = 0.5 * b.eval(t) * fmin.value + ei.eval(t);
            if v < best {
                best = v;
                at = t;
            }
        }
        min_split.push(best);
        argmin_t.push(at);
    }
    let feasible = min_split.iter().all(|&v| v >= 0.0);
    Ok(FeasibilityReport {
        ra,
        rb,
        shell: (lo, hi),
        min_split,
        argmin_t,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Nonlinearity, PeriodicCoefficient, PowerSum};

    fn spec(e: f64) -> SystemSpec {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 1.0)
            .unwrap()
            .with_forcing(vec![PeriodicCoefficient::constant(e, 1.0).unwrap()])
            .unwrap()
    }

    #[test]
    fn split_examples() {
        let near = e_split_feasibility(&spec(-2.0), 0.1, 0.2, 128, 1000).unwrap();
        assert!(near.feasible);
        assert!((near.min_split[0] - 0.5).abs() < 1e-12);

        let far = e_split_feasibility(&spec(-2.0), 1.0, 2.0, 128, 1000).unwrap();
        assert!(!far.feasible);
        assert!((far.min_split[0] + 1.75).abs() < 1e-12);

        let zero = e_split_feasibility(&spec(0.0), 1.0, 2.0, 128, 1000).unwrap();
        assert!(zero.feasible);
        assert!((zero.min_split[0] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn requires_forcing() {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        let s = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 1.0).unwrap();
        assert!(e_split_feasibility(&s, 1.0, 2.0, 64, 1000).is_err());
    }
}
