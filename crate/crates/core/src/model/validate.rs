//! Numerical checks of the structural hypotheses on coefficients and nonlinearity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::periodic_quadrature;

use super::{Nonlinearity, SystemSpec};

/// Floor a periodic integral must exceed to count as positive.
pub const INTEGRAL_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Zero-based component index.
    pub component: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.message.clone()).collect()
    }
}

fn fmt_num(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{}", (x * 1e12).round() / 1e12)
    } else {
        format!("{x:e}")
    }
}

/// Checks nonnegativity of `a_i`, `b_i` on the grid and positivity of their periodic integrals.
pub fn validate_h1(spec: &SystemSpec, grid_size: usize) -> Result<Validation> {
    if grid_size < 16 {
        return Err(Error::Invalid(format!("grid_size must be >= 16, got {grid_size}")));
    }
    let omega = spec.omega();
    let mut out = Validation::default();
    for (name, family) in [("a", spec.a()), ("b", spec.b())] {
        for (i, coeff) in family.iter().enumerate() {
            let samples = coeff.sample(grid_size);
            if let Some(k) = samples.iter().position(|v| !v.is_finite()) {
                return Err(Error::Evaluation {
                    what: format!("{name}_{}", i + 1),
                    t: omega * k as f64 / grid_size as f64,
                });
            }
            let (kmin, vmin) = samples
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |acc, (k, &v)| if v < acc.1 { (k, v) } else { acc });
            if vmin < 0.0 {
                let t = omega * kmin as f64 / grid_size as f64;
                out.violations.push(Violation {
                    component: i,
                    message: format!("{name}_{} negative at t={}", i + 1, fmt_num(t)),
                });
            }
            let integral = periodic_quadrature(&samples, omega)?;
            if integral <= INTEGRAL_FLOOR {
                out.violations.push(Violation {
                    component: i,
                    message: format!("component {}: ∫{name} = {} not > 0", i + 1, fmt_num(integral)),
                });
            }
        }
    }
    Ok(out)
}

/// Samples shells `|u|` log-spaced in `[1e-6, 1e6]` with random simplex directions and
/// checks that every `f_i(u)` is finite and positive.
pub fn validate_h2(f: &Nonlinearity, n: usize, sample_count: usize, seed: u64) -> Result<Validation> {
    if sample_count < 100 {
        return Err(Error::Invalid(format!("sample_count must be >= 100, got {sample_count}")));
    }
    if f.dimension() != n {
        return Err(Error::Invalid(format!(
            "nonlinearity has {} components, expected {n}",
            f.dimension()
        )));
    }
    // half-decade shells; index 12 is exactly |u| = 1
    const SHELLS: usize = 25;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Validation::default();
    let mut u = vec![0.0; n];
    for j in 0..sample_count {
        let exponent = -6.0 + 12.0 * (j % SHELLS) as f64 / (SHELLS - 1) as f64;
        let rho = 10f64.powf(exponent);
        random_simplex(&mut rng, &mut u);
        u.iter_mut().for_each(|x| *x *= rho);
        for i in 0..n {
            let v = f.eval(i, &u);
            if !(v.is_finite() && v > 0.0) {
                out.violations.push(Violation {
                    component: i,
                    message: format!("f_{}(u) = {v} not in (0, inf) at u = {u:?}", i + 1),
                });
            }
        }
    }
    Ok(out)
}

/// Fills `u` with a uniformly random point of the unit simplex.
pub(crate) fn random_simplex<R: Rng>(rng: &mut R, u: &mut [f64]) {
    let mut total = 0.0;
    for x in u.iter_mut() {
        let r: f64 = rng.random();
        *x = -(1.0 - r).ln();
        total += *x;
    }
    if total > 0.0 {
        u.iter_mut().for_each(|x| *x /= total);
    } else {
        let n = u.len() as f64;
        u.iter_mut().for_each(|x| *x = 1.0 / n);
    }
}
