use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Sum norm `sum_j |u_j|` used for states throughout the crate.
pub fn state_norm(u: &[f64]) -> f64 {
    u.iter().map(|x| x.abs()).sum()
}

/// Per-component parameters of `f_i(u) = alpha_i |u|^-p_i + beta_i |u|^q_i + gamma_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSum {
    pub alpha: Vec<f64>,
    pub p: Vec<f64>,
    pub beta: Vec<f64>,
    pub q: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl PowerSum {
    pub fn new(alpha: Vec<f64>, p: Vec<f64>, beta: Vec<f64>, q: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        let n = alpha.len();
        if n == 0 || [p.len(), beta.len(), q.len(), gamma.len()].iter().any(|&l| l != n) {
            return Err(Error::Invalid("power-sum parameter vectors must share a nonzero length".into()));
        }
        for i in 0..n {
            let vals = [alpha[i], p[i], beta[i], q[i], gamma[i]];
            if vals.iter().any(|x| !x.is_finite()) {
                return Err(Error::Invalid(format!("power-sum component {} has non-finite parameters", i + 1)));
            }
            if alpha[i] <= 0.0 {
                return Err(Error::Invalid(format!("alpha_{} must be > 0", i + 1)));
            }
            if p[i] < 0.0 || beta[i] < 0.0 || q[i] < 0.0 || gamma[i] < 0.0 {
                return Err(Error::Invalid(format!(
                    "p_{0}, beta_{0}, q_{0}, gamma_{0} must be >= 0",
                    i + 1
                )));
            }
        }
        Ok(Self { alpha, p, beta, q, gamma })
    }

    /// Same parameters for every one of the `n` components.
    pub fn uniform(n: usize, alpha: f64, p: f64, beta: f64, q: f64, gamma: f64) -> Result<Self> {
        Self::new(vec![alpha; n], vec![p; n], vec![beta; n], vec![q; n], vec![gamma; n])
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    /// Value of component `i` as a function of the state norm.
    pub fn radial(&self, i: usize, rho: f64) -> f64 {
        let mut v = self.alpha[i] * rho.powf(-self.p[i]) + self.gamma[i];
        if self.beta[i] > 0.0 {
            v += self.beta[i] * rho.powf(self.q[i]);
        }
        v
    }

    /// Exponent of the dominant term of component `i` as the norm grows.
    pub fn leading_exponent(&self, i: usize) -> f64 {
        let mut e = -self.p[i];
        if self.gamma[i] > 0.0 {
            e = e.max(0.0);
        }
        if self.beta[i] > 0.0 {
            e = e.max(self.q[i]);
        }
        e
    }
}

type HookFn = dyn Fn(usize, &[f64]) -> f64 + Send + Sync;

/// A programmatically supplied nonlinearity `(i, u) -> f_i(u)`.
#[derive(Clone)]
pub struct CustomHook {
    n: usize,
    name: String,
    eval: Arc<HookFn>,
}

impl CustomHook {
    pub fn new<F>(n: usize, name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(usize, &[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            n,
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CustomHook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomHook").field("n", &self.n).field("name", &self.name).finish()
    }
}

#[derive(Clone, Debug)]
pub enum Nonlinearity {
    PowerSum(PowerSum),
    Custom(CustomHook),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    Sublinear,
    Superlinear,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoticProfile {
    pub growth: Growth,
    pub singular_at_zero: bool,
}

impl Nonlinearity {
    pub fn power_sum(ps: PowerSum) -> Self {
        Nonlinearity::PowerSum(ps)
    }

    pub fn custom<F>(n: usize, name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(usize, &[f64]) -> f64 + Send + Sync + 'static,
    {
        Nonlinearity::Custom(CustomHook::new(n, name, eval))
    }

    pub fn dimension(&self) -> usize {
        match self {
            Nonlinearity::PowerSum(ps) => ps.dimension(),
            Nonlinearity::Custom(h) => h.n,
        }
    }

    /// `f_i(u)`; `u` must have `dimension()` entries.
    pub fn eval(&self, i: usize, u: &[f64]) -> f64 {
        match self {
            Nonlinearity::PowerSum(ps) => ps.radial(i, state_norm(u)),
            Nonlinearity::Custom(h) => (h.eval)(i, u),
        }
    }

    /// True when every `f_i` depends on `u` only through `|u|`.
    pub fn is_radial(&self) -> bool {
        matches!(self, Nonlinearity::PowerSum(_))
    }

    pub fn singular_at_zero(&self) -> bool {
        match self {
            Nonlinearity::PowerSum(ps) => ps.p.iter().any(|&p| p > 0.0),
            Nonlinearity::Custom(_) => (0..self.dimension()).any(|i| self.probe_singular(i)),
        }
    }

    // f_i grows monotonically by at least 10x as |u| drops from 1e-2 to 1e-8.
    fn probe_singular(&self, i: usize) -> bool {
        let vals: Vec<f64> = [1e-2, 1e-4, 1e-6, 1e-8]
            .iter()
            .map(|&rho| self.eval(i, &self.barycentric(rho)))
            .collect();
        vals.iter().all(|v| v.is_finite())
            && vals.windows(2).all(|w| w[1] > w[0])
            && vals[3] >= 10.0 * vals[0]
    }

    fn barycentric(&self, rho: f64) -> Vec<f64> {
        let n = self.dimension();
        vec![rho / n as f64; n]
    }

    /// Classifies `f_i(u)/|u|` as `|u| -> infinity` and flags the singularity at zero.
    pub fn asymptotic_class(&self) -> AsymptoticProfile {
        let growth = match self {
            Nonlinearity::PowerSum(ps) => {
                let exps: Vec<f64> = (0..ps.dimension()).map(|i| ps.leading_exponent(i)).collect();
                if exps.iter().all(|&e| e < 1.0) {
                    Growth::Sublinear
                } else if exps.iter().all(|&e| e > 1.0) {
                    Growth::Superlinear
                } else {
                    Growth::Indeterminate
                }
            }
            Nonlinearity::Custom(_) => self.probe_growth(),
        };
        AsymptoticProfile {
            growth,
            singular_at_zero: self.singular_at_zero(),
        }
    }

    fn probe_growth(&self) -> Growth {
        let per_component: Vec<Growth> = (0..self.dimension())
            .map(|i| {
                let r: Vec<f64> = [1e2, 1e3, 1e4]
                    .iter()
                    .map(|&rho| self.eval(i, &self.barycentric(rho)) / rho)
                    .collect();
                if r.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                    Growth::Indeterminate
                } else if r.windows(2).all(|w| w[0] >= 10.0 * w[1]) {
                    Growth::Sublinear
                } else if r.windows(2).all(|w| w[1] >= 10.0 * w[0]) {
                    Growth::Superlinear
                } else {
                    Growth::Indeterminate
                }
            })
            .collect();
        if per_component.iter().all(|g| *g == Growth::Sublinear) {
            Growth::Sublinear
        } else if per_component.iter().all(|g| *g == Growth::Superlinear) {
            Growth::Superlinear
        } else {
            Growth::Indeterminate
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(p: f64, beta: f64, q: f64) -> Nonlinearity {
        Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, p, beta, q, 0.0).unwrap())
    }

    #[test]
    fn classification_examples() {
        let inv = ps(1.0, 0.0, 0.0).asymptotic_class();
        assert_eq!(inv, AsymptoticProfile { growth: Growth::Sublinear, singular_at_zero: true });
        let sup = ps(1.0, 1.0, 2.0).asymptotic_class();
        assert_eq!(sup, AsymptoticProfile { growth: Growth::Superlinear, singular_at_zero: true });
        let lin = ps(1.0, 1.0, 1.0).asymptotic_class();
        assert_eq!(lin, AsymptoticProfile { growth: Growth::Indeterminate, singular_at_zero: true });
    }

    #[test]
    fn zero_beta_ignores_growth_exponent() {
        let f = ps(0.5, 0.0, 3.0);
        assert_eq!(f.asymptotic_class().growth, Growth::Sublinear);
        assert_eq!(f.eval(0, &[4.0]), 0.5);
    }

    #[test]
    fn power_sum_uses_sum_norm() {
        let f = Nonlinearity::power_sum(PowerSum::uniform(2, 1.0, 1.0, 1.0, 2.0, 0.0).unwrap());
        // |u| = 2: 1/2 + 4
        assert!((f.eval(1, &[0.5, 1.5]) - 4.5).abs() < 1e-15);
    }

    #[test]
    fn custom_probes() {
        let sub = Nonlinearity::custom(1, "inv", |_, u| 1.0 / state_norm(u));
        assert_eq!(
            sub.asymptotic_class(),
            AsymptoticProfile { growth: Growth::Sublinear, singular_at_zero: true }
        );
        let sup = Nonlinearity::custom(2, "cube", |_, u| state_norm(u).powi(3) + 1.0);
        assert_eq!(
            sup.asymptotic_class(),
            AsymptoticProfile { growth: Growth::Superlinear, singular_at_zero: false }
        );
        let sqrt = Nonlinearity::custom(1, "sqrt", |_, u| state_norm(u).sqrt());
        assert_eq!(sqrt.asymptotic_class().growth, Growth::Indeterminate);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(PowerSum::uniform(1, 0.0, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(PowerSum::new(vec![1.0], vec![1.0, 2.0], vec![0.0], vec![0.0], vec![0.0]).is_err());
    }
}
