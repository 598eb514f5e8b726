use crate::cone::SINGULARITY_FLOOR;
use crate::error::{Error, Result};
use crate::kernel::GridFunction;
use crate::model::{state_norm, SystemSpec};
use crate::spectral;

use super::integrate::dopri5;

/// `max_{i,k} |u_i'(t_k) + a_i(t_k) u_i(t_k) - lambda b_i(t_k) f_i(u(t_k))|` with a
/// spectral derivative.
pub fn ode_residual(u: &GridFunction, spec: &SystemSpec) -> f64 {
    residual_with(u, spec, false)
}

/// As [`ode_residual`], including the forcing term `lambda e_i`.
pub fn ode_residual_forced(u: &GridFunction, spec: &SystemSpec) -> f64 {
    residual_with(u, spec, true)
}

fn residual_with(u: &GridFunction, spec: &SystemSpec, forcing: bool) -> f64 {
    let (n, m) = (u.n(), u.m());
    let derivs: Vec<Vec<f64>> = (0..n).map(|i| spectral::derivative(u.component(i), u.omega())).collect();
    let mut state = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut worst = 0.0f64;
    for k in 0..m {
        u.state_into(k, &mut state);
        spec.rhs(u.node(k), &state, forcing, &mut rhs);
        for i in 0..n {
            let r = (derivs[i][k] - rhs[i]).abs();
            // NaN propagates as the worst residual
            if !(r <= worst) {
                worst = r;
            }
        }
    }
    worst
}

/// Integrates the system from `x(0) = u(0)` over one period and returns `||x(omega) - x(0)||`.
pub fn poincare_check(u: &GridFunction, spec: &SystemSpec, rk_tol: f64) -> Result<f64> {
    poincare_with(u, spec, rk_tol, false)
}

/// As [`poincare_check`], including the forcing term.
pub fn poincare_check_forced(u: &GridFunction, spec: &SystemSpec, rk_tol: f64) -> Result<f64> {
    poincare_with(u, spec, rk_tol, true)
}

fn poincare_with(u: &GridFunction, spec: &SystemSpec, rk_tol: f64, forcing: bool) -> Result<f64> {
    if !(rk_tol > 0.0) {
        return Err(Error::Invalid(format!("rk_tol must be positive, got {rk_tol}")));
    }
    let x0 = u.state(0);
    let x1 = dopri5(
        |t, x, out| spec.rhs(t, x, forcing, out),
        0.0,
        spec.omega(),
        &x0,
        rk_tol,
        rk_tol,
        Some(SINGULARITY_FLOOR),
    )?;
    let diff: Vec<f64> = x1.iter().zip(&x0).map(|(a, b)| a - b).collect();
    Ok(state_norm(&diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Nonlinearity, PeriodicCoefficient, PowerSum};

    fn spec(lambda: f64) -> SystemSpec {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        SystemSpec::new(1.0, vec![one.clone()], vec![one], f, lambda).unwrap()
    }

    #[test]
    fn residual_examples() {
        let half = GridFunction::constant(128, 1.0, &[0.5]).unwrap();
        assert!(ode_residual(&half, &spec(0.25)) < 1e-10);
        let one = GridFunction::constant(128, 1.0, &[1.0]).unwrap();
        assert!((ode_residual(&one, &spec(0.25)) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn poincare_examples() {
        let s = spec(0.25);
        let half = GridFunction::constant(64, 1.0, &[0.5]).unwrap();
        assert!(poincare_check(&half, &s, 1e-10).unwrap() < 1e-8);
        // x' = -x + 0.25/x from x(0) = 1: x(t)^2 = 0.25 + 0.75 e^{-2t}
        let one = GridFunction::constant(64, 1.0, &[1.0]).unwrap();
        let exact = 1.0 - (0.25 + 0.75 * (-2.0f64).exp()).sqrt();
        assert!((poincare_check(&one, &s, 1e-10).unwrap() - exact).abs() < 1e-8);
    }

    #[test]
    fn forcing_enters_both_checks() {
        let s = spec(1.0)
            .with_forcing(vec![PeriodicCoefficient::constant(1.0, 1.0).unwrap()])
            .unwrap();
        // x' = -x + 1/x + 1 vanishes at the golden ratio
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let u = GridFunction::constant(32, 1.0, &[phi]).unwrap();
        assert!(ode_residual_forced(&u, &s) < 1e-12);
        assert!(ode_residual(&u, &s) > 0.9);
        assert!(poincare_check_forced(&u, &s, 1e-10).unwrap() < 1e-9);
    }
}
