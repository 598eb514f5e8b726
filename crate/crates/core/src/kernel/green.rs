use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{PeriodicCoefficient, SystemSpec};
use crate::spectral;

use super::quadrature::{periodic_quadrature, MIN_GRID};

/// Structural constants of the cone and the Green's kernel bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeConstants {
    pub sigma_i: Vec<f64>,
    pub sigma: f64,
    pub gamma: f64,
    pub chi: f64,
    pub green_lower: Vec<f64>,
    pub green_upper: Vec<f64>,
    /// `int_0^omega b_i`
    pub b_integrals: Vec<f64>,
}

/// `exp(-int_0^omega a)` by periodic trapezoid on `m` nodes.
pub fn compute_sigma(a: &PeriodicCoefficient, omega: f64, m: usize) -> Result<f64> {
    if m < MIN_GRID {
        return Err(Error::Invalid(format!("m must be >= {MIN_GRID}, got {m}")));
    }
    let q = periodic_quadrature(&a.sample(m), omega)?;
    let sigma = (-q).exp();
    if !(sigma < 1.0) {
        return Err(Error::Hypothesis(format!("∫a = {q} not > 0 (sigma = {sigma})")));
    }
    Ok(sigma)
}

/// Per-component tables for the kernel `G_i(t,s) = exp(int_t^s a_i) / (exp(int_0^omega a_i) - 1)`.
#[derive(Clone, Debug)]
pub(crate) struct ComponentTable {
    /// `int_0^omega a_i`
    pub total: f64,
    /// `total / omega`, the mean decay rate
    pub kappa: f64,
    /// Fourier coefficients of the zero-mean periodic part of the antiderivative of `a_i`.
    pub periodic: Vec<Complex64>,
    /// That periodic part on the grid.
    pub periodic_nodes: Vec<f64>,
    pub b_nodes: Vec<f64>,
    pub e_nodes: Option<Vec<f64>>,
    /// Circulant weights `w_d` with `int_t^{t+omega} e^{kappa (s-t)} phi(s) ds
    /// = (e^{total} - 1) sum_d w_d phi(t + d h)`, exact for band-limited periodic `phi`
    /// (or, when `linear`, for piecewise-linear `phi`).
    pub weights: Vec<f64>,
    /// Set when the trigonometric weights had a negative entry and were replaced by the
    /// positive piecewise-linear ones.
    pub linear: bool,
}

/// Trigonometric weights when they are all nonnegative, otherwise piecewise-linear ones.
///
/// The trigonometric weights are the band-limited projection of `e^{kappa tau}` on one
/// period, which jumps by `e^{kappa omega}` at the wrap; once that jump is large the Gibbs
/// undershoot makes some weights negative and the operator can lose positivity.
fn kernel_weights(kappa: f64, omega: f64, m: usize) -> (Vec<f64>, bool) {
    let w = exponential_weights(kappa, omega, m);
    if w.iter().all(|&x| x >= 0.0) {
        (w, false)
    } else {
        (linear_exponential_weights(kappa, omega, m), true)
    }
}

/// `(int_0^L e^{kappa y} dy, int_0^L y e^{kappa y} dy)`
pub(crate) fn exponential_moments(kappa: f64, len: f64) -> (f64, f64) {
    let x = kappa * len;
    if x.abs() < 1e-3 {
        let e1 = len * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
        let e2 = len * len * (0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0);
        (e1, e2)
    } else {
        let e1 = x.exp_m1() / kappa;
        (e1, (len * x.exp() - e1) / kappa)
    }
}

/// Weights integrating the piecewise-linear interpolant of a periodic function against
/// `e^{kappa tau}`; every weight is positive.
fn linear_exponential_weights(kappa: f64, omega: f64, m: usize) -> Vec<f64> {
    let h = omega / m as f64;
    let (e1, e2) = exponential_moments(kappa, h);
    // per cell: left node gets e1 - e2/h, right node e2/h
    let (left, right) = (e1 - e2 / h, e2 / h);
    let norm = (kappa * omega).exp_m1();
    (0..m)
        .map(|d| {
            let prev = if d == 0 { m - 1 } else { d - 1 };
            ((kappa * d as f64 * h).exp() * left + (kappa * prev as f64 * h).exp() * right) / norm
        })
        .collect()
}

/// Weights integrating the trigonometric interpolant of a periodic function against `e^{kappa tau}`.
fn exponential_weights(kappa: f64, omega: f64, m: usize) -> Vec<f64> {
    let cos_table: Vec<f64> = (0..m).map(|j| (2.0 * PI * j as f64 / m as f64).cos()).collect();
    let sin_table: Vec<f64> = (0..m).map(|j| (2.0 * PI * j as f64 / m as f64).sin()).collect();
    let mut w = vec![1.0 / kappa; m];
    for l in 1..=(m - 1) / 2 {
        let nu = 2.0 * PI * l as f64 / omega;
        let denom = kappa * kappa + nu * nu;
        for (d, wd) in w.iter_mut().enumerate() {
            let j = (l * d) % m;
            *wd += 2.0 * (kappa * cos_table[j] - nu * sin_table[j]) / denom;
        }
    }
    if m.is_multiple_of(2) {
        let nu = PI * m as f64 / omega;
        let term = kappa / (kappa * kappa + nu * nu);
        for (d, wd) in w.iter_mut().enumerate() {
            *wd += if d % 2 == 0 { term } else { -term };
        }
    }
    w.iter_mut().for_each(|x| *x /= m as f64);
    w
}

/// Green's kernel tables and cone constants of a system on an `m`-node grid.
#[derive(Clone, Debug)]
pub struct PeriodicKernel {
    omega: f64,
    m: usize,
    pub(crate) components: Vec<ComponentTable>,
    constants: ConeConstants,
}

impl PeriodicKernel {
    pub fn new(spec: &SystemSpec, m: usize) -> Result<Self> {
        if m < MIN_GRID {
            return Err(Error::Invalid(format!("m must be >= {MIN_GRID}, got {m}")));
        }
        let omega = spec.omega();
        let mut components = Vec::with_capacity(spec.n());
        for i in 0..spec.n() {
            let a_nodes = spec.a()[i].sample(m);
            let b_nodes = spec.b()[i].sample(m);
            let total = periodic_quadrature(&a_nodes, omega).map_err(|e| match e {
                Error::Evaluation { t, .. } => Error::Evaluation {
                    what: format!("a_{}", i + 1),
                    t,
                },
                other => other,
            })?;
            if !(total > 0.0) {
                return Err(Error::Hypothesis(format!(
                    "component {}: ∫a = {total} not > 0",
                    i + 1
                )));
            }
            if b_nodes.iter().any(|x| !x.is_finite()) {
                return Err(Error::Evaluation {
                    what: format!("b_{}", i + 1),
                    t: 0.0,
                });
            }
            let (mean, periodic) = spectral::antiderivative(&a_nodes, omega);
            let kappa = mean;
            let (weights, linear) = kernel_weights(kappa, omega, m);
            let periodic_nodes = spectral::synthesize(&periodic);
            let e_nodes = spec.e().map(|e| e[i].sample(m));
            components.push(ComponentTable {
                total,
                kappa,
                periodic,
                periodic_nodes,
                b_nodes,
                e_nodes,
                weights,
                linear,
            });
        }
        let constants = Self::constants_from(&components, omega)?;
        Ok(Self {
            omega,
            m,
            components,
            constants,
        })
    }

    fn constants_from(components: &[ComponentTable], omega: f64) -> Result<ConeConstants> {
        let mut sigma_i = Vec::new();
        let mut green_lower = Vec::new();
        let mut green_upper = Vec::new();
        let mut b_integrals = Vec::new();
        for c in components {
            // sigma^{-1} - 1 = e^Q - 1
            let denom = c.total.exp_m1();
            sigma_i.push((-c.total).exp());
            green_lower.push(1.0 / denom);
            green_upper.push(c.total.exp() / denom);
            b_integrals.push(periodic_quadrature(&c.b_nodes, omega)?);
        }
        let sigma = sigma_i.iter().copied().fold(f64::INFINITY, f64::min);
        let gamma = sigma
            * b_integrals
                .iter()
                .zip(&green_lower)
                .map(|(b, l)| b * l)
                .fold(f64::INFINITY, f64::min);
        let chi = b_integrals.iter().zip(&green_upper).map(|(b, u)| b * u).sum();
        Ok(ConeConstants {
            sigma_i,
            sigma,
            gamma,
            chi,
            green_lower,
            green_upper,
            b_integrals,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn constants(&self) -> &ConeConstants {
        &self.constants
    }

    /// Cumulative integral `int_0^t a_i`, valid for any real `t`.
    pub fn cumulative(&self, i: usize, t: f64) -> f64 {
        let c = &self.components[i];
        c.kappa * t + spectral::interpolate(&c.periodic, self.omega, t) - c.periodic_nodes[0]
    }

    /// `G_i(t, s)` for `t <= s <= t + omega`.
    pub fn green(&self, i: usize, t: f64, s: f64) -> Result<f64> {
        if i >= self.n() {
            return Err(Error::Domain(format!("component {i} out of range")));
        }
        if !(s >= t && s <= t + self.omega) {
            return Err(Error::Domain(format!(
                "green kernel needs t <= s <= t + omega, got t={t}, s={s}"
            )));
        }
        let c = &self.components[i];
        let p = |x: f64| spectral::interpolate(&c.periodic, self.omega, x);
        let exponent = c.kappa * (s - t) + p(s) - p(t);
        Ok(exponent.exp() * self.constants.green_lower[i])
    }
}

/// `sigma_i`, `sigma`, `Gamma`, `chi` and the kernel bounds of `spec` on `m` nodes.
pub fn compute_constants(spec: &SystemSpec, m: usize) -> Result<ConeConstants> {
    Ok(PeriodicKernel::new(spec, m)?.constants().clone())
}
