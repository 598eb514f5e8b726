use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{exponential_moments, ConeConstants, GridFunction, PeriodicKernel};
use crate::model::SystemSpec;
use crate::spectral;

/// Inputs whose smallest shell `min_t sum_i |u_i(t)|` is below this are rejected.
pub const SINGULARITY_FLOOR: f64 = 1e-8;

/// The integral operator `T_lambda` of a system discretized on `m` nodes.
///
/// Component `i` of the image is
/// `lambda * int_t^{t+omega} G_i(t,s) b_i(s) f_i(u(s)) ds`. Writing the kernel as
/// `e^{kappa (s-t) + P(s) - P(t)} / (e^Q - 1)` with `P` periodic, the integral reduces
/// to a circulant sum against precomputed weights, so each application costs
/// `O(n m^2)` and is exact for band-limited integrands. For strong decay (large `Q`) those
/// weights turn negative and a positive piecewise-linear rule is used instead.
#[derive(Clone, Debug)]
pub struct ConeOperator {
    spec: SystemSpec,
    kernel: PeriodicKernel,
    forcing: bool,
}

impl ConeOperator {
    pub fn new(spec: &SystemSpec, m: usize) -> Result<Self> {
        Ok(Self {
            spec: spec.clone(),
            kernel: PeriodicKernel::new(spec, m)?,
            forcing: false,
        })
    }

    /// Includes `lambda * e_i` in the integrand. Ignored when the system has no forcing.
    pub fn with_forcing(mut self, on: bool) -> Self {
        self.forcing = on && self.spec.e().is_some();
        self
    }

    /// Same discretization with a different `lambda`.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Ok(Self {
            spec: self.spec.with_lambda(lambda)?,
            kernel: self.kernel.clone(),
            forcing: self.forcing,
        })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn kernel(&self) -> &PeriodicKernel {
        &self.kernel
    }

    pub fn constants(&self) -> &ConeConstants {
        self.kernel.constants()
    }

    pub fn lambda(&self) -> f64 {
        self.spec.lambda()
    }

    pub fn forcing(&self) -> bool {
        self.forcing
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn m(&self) -> usize {
        self.kernel.m()
    }

    pub fn omega(&self) -> f64 {
        self.spec.omega()
    }

    pub(crate) fn check_input(&self, u: &GridFunction) -> Result<()> {
        if u.n() != self.n() || u.m() != self.m() || (u.omega() - self.omega()).abs() > 1e-12 * self.omega() {
            return Err(Error::Invalid(format!(
                "grid function shape (n={}, m={}, omega={}) does not match operator (n={}, m={}, omega={})",
                u.n(),
                u.m(),
                u.omega(),
                self.n(),
                self.m(),
                self.omega()
            )));
        }
        let min_shell = u.min_shell();
        if !(min_shell > SINGULARITY_FLOOR) {
            return Err(Error::SingularInput {
                min_shell,
                floor: SINGULARITY_FLOOR,
            });
        }
        Ok(())
    }

    /// `phi_i(t_k) = e^{P_i(t_k)} (b_i f_i(u(t_k)) [+ e_i])` for every component.
    fn integrand(&self, u: &GridFunction) -> Result<Vec<Vec<f64>>> {
        let (n, m) = (self.n(), self.m());
        let f = self.spec.f();
        let mut phi = vec![vec![0.0; m]; n];
        let mut state = vec![0.0; n];
        for k in 0..m {
            u.state_into(k, &mut state);
            for (i, row) in phi.iter_mut().enumerate() {
                let fi = f.eval(i, &state);
                if !fi.is_finite() {
                    return Err(Error::Evaluation {
                        what: format!("f_{} at u = {state:?}", i + 1),
                        t: u.node(k),
                    });
                }
                let table = &self.kernel.components[i];
                let mut src = table.b_nodes[k] * fi;
                if self.forcing {
                    if let Some(e) = &table.e_nodes {
                        src += e[k];
                    }
                }
                row[k] = table.periodic_nodes[k].exp() * src;
            }
        }
        Ok(phi)
    }

    /// `T_lambda u` on the grid.
    pub fn apply(&self, u: &GridFunction) -> Result<GridFunction> {
        self.check_input(u)?;
        let (n, m) = (self.n(), self.m());
        let lambda = self.lambda();
        let phi = self.integrand(u)?;
        let mut out = vec![0.0; n * m];
        for i in 0..n {
            let table = &self.kernel.components[i];
            let w = &table.weights;
            let row = &phi[i];
            for k in 0..m {
                let mut acc = 0.0;
                for (d, wd) in w.iter().enumerate() {
                    let j = k + d;
                    acc += wd * row[if j >= m { j - m } else { j }];
                }
                out[i * m + k] = lambda * (-table.periodic_nodes[k]).exp() * acc;
            }
        }
        GridFunction::new(n, m, self.omega(), out)
    }

    /// `T_lambda^i u(t)` at an arbitrary time, using the same interpolant of the integrand
    /// as the weights (trigonometric or piecewise-linear). Agrees with [`apply`](Self::apply)
    /// on grid nodes.
    pub fn apply_at(&self, u: &GridFunction, i: usize, t: f64) -> Result<f64> {
        self.check_input(u)?;
        let phi = self.integrand(u)?;
        let table = &self.kernel.components[i];
        let omega = self.omega();
        let m = self.m();
        if table.linear {
            let p = spectral::interpolate(&table.periodic, omega, t);
            let acc = linear_product_integral(&phi[i], table.kappa, omega, t) / table.total.exp_m1();
            return Ok(self.lambda() * (-p).exp() * acc);
        }
        let coeffs = spectral::coefficients(&phi[i]);
        let kappa = table.kappa;
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, c) in coeffs.iter().enumerate() {
            let k = if l <= m / 2 { l as i64 } else { l as i64 - m as i64 };
            let nu = 2.0 * std::f64::consts::PI * k as f64 / omega;
            let weight = if m.is_multiple_of(2) && l == m / 2 { 0.5 } else { 1.0 };
            let phase = Complex64::new(0.0, nu * t).exp();
            acc += *c * phase / Complex64::new(kappa, nu) * weight;
            if weight == 0.5 {
                // the Nyquist mode is split evenly between +nu and -nu
                let phase = Complex64::new(0.0, -nu * t).exp();
                acc += *c * phase / Complex64::new(kappa, -nu) * weight;
            }
        }
        let p = spectral::interpolate(&table.periodic, omega, t);
        Ok(self.lambda() * (-p).exp() * acc.re)
    }

    /// `T u` together with the relative fixed-point residual `||T u - u|| / ||u||`.
    pub fn residual(&self, u: &GridFunction) -> Result<(GridFunction, f64)> {
        let tu = self.apply(u)?;
        let r = tu.distance(u) / u.norm();
        Ok((tu, r))
    }
}

/// `int_t^{t+omega} e^{kappa (s-t)} phi(s) ds` for the periodic piecewise-linear interpolant
/// of the node values `phi`.
fn linear_product_integral(phi: &[f64], kappa: f64, omega: f64, t: f64) -> f64 {
    let m = phi.len();
    let h = omega / m as f64;
    let start = t.rem_euclid(omega);
    let end = start + omega;
    let first = ((start / h).floor() as usize).min(m - 1);
    let mut acc = 0.0;
    for j in first..=first + m {
        let c0 = j as f64 * h;
        let (lo, hi) = (c0.max(start), (c0 + h).min(end));
        if hi <= lo {
            continue;
        }
        let (a, b) = (phi[j % m], phi[(j + 1) % m]);
        let slope = (b - a) / h;
        let (e1, e2) = exponential_moments(kappa, hi - lo);
        acc += (kappa * (lo - start)).exp() * ((a + slope * (lo - c0)) * e1 + slope * e2);
    }
    acc
}

/// `T_lambda u` for the operator's system.
pub fn apply_operator(u: &GridFunction, op: &ConeOperator) -> Result<GridFunction> {
    op.apply(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::cone_check;
    use crate::model::{Nonlinearity, PeriodicCoefficient, PowerSum};

    fn system(f: Nonlinearity, lambda: f64) -> SystemSpec {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        SystemSpec::new(1.0, vec![one.clone()], vec![one], f, lambda).unwrap()
    }

    fn inverse() -> Nonlinearity {
        Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap())
    }

    #[test]
    fn constant_fixed_point_of_inverse() {
        let op = ConeOperator::new(&system(inverse(), 0.25), 128).unwrap();
        let u = GridFunction::constant(128, 1.0, &[0.5]).unwrap();
        let v = op.apply(&u).unwrap();
        assert!(v.max_abs_diff(&u) < 1e-13);
    }

    #[test]
    fn constant_nonlinearity_gives_lambda() {
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap());
        let op = ConeOperator::new(&system(f, 0.3), 64).unwrap();
        let u = GridFunction::from_fn(1, 64, 1.0, |_, t| 1.0 + 0.2 * (6.0 * t).sin().powi(2)).unwrap();
        let v = op.apply(&u).unwrap();
        assert!(v.values().iter().all(|x| (x - 0.3).abs() < 1e-13));
    }

    #[test]
    fn zero_input_is_rejected() {
        let op = ConeOperator::new(&system(inverse(), 1.0), 32).unwrap();
        let zero = GridFunction::constant(32, 1.0, &[0.0]).unwrap();
        assert!(matches!(op.apply(&zero), Err(Error::SingularInput { .. })));
    }

    #[test]
    fn apply_at_matches_grid_and_is_periodic() {
        let a = PeriodicCoefficient::sinusoid(1.0, 0.6, 0.4, 2.0).unwrap();
        let b = PeriodicCoefficient::sinusoid(2.0, 1.0, -1.0, 2.0).unwrap();
        let spec = SystemSpec::new(2.0, vec![a], vec![b], inverse(), 0.7).unwrap();
        let op = ConeOperator::new(&spec, 64).unwrap();
        let u = GridFunction::from_fn(1, 64, 2.0, |_, t| 1.0 + 0.3 * (std::f64::consts::PI * t).cos()).unwrap();
        let v = op.apply(&u).unwrap();
        for k in [0, 5, 33, 63] {
            let direct = op.apply_at(&u, 0, u.node(k)).unwrap();
            assert!((direct - v.get(0, k)).abs() < 1e-12);
        }
        for t in [0.13, 1.7] {
            let d = op.apply_at(&u, 0, t).unwrap() - op.apply_at(&u, 0, t + 2.0).unwrap();
            assert!(d.abs() < 1e-10);
        }
    }

    #[test]
    fn strong_decay_keeps_positivity_and_the_cone() {
        // int a = 5.2: trigonometric weights would go negative here
        let omega = 2.6;
        let a = PeriodicCoefficient::sinusoid(2.0, 1.7, 2.5, omega).unwrap();
        let b = PeriodicCoefficient::constant(1.0, omega).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 0.6, 1.6, 0.8, 1.4, 0.2).unwrap());
        let spec = SystemSpec::new(omega, vec![a], vec![b], f, 0.33).unwrap();
        let op = ConeOperator::new(&spec, 32).unwrap();
        assert!(op.kernel().components[0].linear);
        let sigma = op.constants().sigma_i[0];
        // a sharp dip down to the cone floor, badly resolved on 32 nodes
        let u = GridFunction::from_fn(1, 32, omega, |_, t| {
            sigma + (1.0 - sigma) * (1.0 - (-40.0 * (t - 1.0).powi(2)).exp())
        })
        .unwrap();
        let v = op.apply(&u).unwrap();
        assert!(v.values().iter().all(|&x| x > 0.0));
        assert!(cone_check(&v, op.constants()).in_cone);
        for k in [0, 9, 31] {
            assert!((op.apply_at(&u, 0, u.node(k)).unwrap() - v.get(0, k)).abs() < 1e-10 * v.norm());
        }
        let d = op.apply_at(&u, 0, 0.37).unwrap() - op.apply_at(&u, 0, 0.37 + omega).unwrap();
        assert!(d.abs() < 1e-10 * v.norm());
    }

    #[test]
    fn matches_brute_force_quadrature_with_variable_coefficients() {
        // reference: composite Simpson on [t, t + omega] with G from the cumulative integral
        let omega = 1.5;
        let a = PeriodicCoefficient::sinusoid(0.8, 0.5, 0.2, omega).unwrap();
        let b = PeriodicCoefficient::sinusoid(1.0, 0.3, 1.1, omega).unwrap();
        let spec = SystemSpec::new(omega, vec![a.clone()], vec![b.clone()], inverse(), 0.4).unwrap();
        let op = ConeOperator::new(&spec, 64).unwrap();
        let prof = |t: f64| 1.0 + 0.25 * (2.0 * std::f64::consts::PI * t / omega).sin();
        let u = GridFunction::from_fn(1, 64, omega, |_, t| prof(t)).unwrap();
        let v = op.apply(&u).unwrap();
        // closed-form antiderivative of the sinusoid
        let big_a = |t: f64| {
            let w = 2.0 * std::f64::consts::PI / omega;
            0.8 * t - 0.5 / w * ((w * t + 0.2).cos() - 0.2f64.cos())
        };
        let q = big_a(omega);
        let t = u.node(7);
        let steps = 4000;
        let h = omega / steps as f64;
        let g = |s: f64| (big_a(s) - big_a(t)).exp() / q.exp_m1() * b.eval(s) / prof(s);
        let mut sum = g(t) + g(t + omega);
        for j in 1..steps {
            sum += g(t + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
        }
        let reference = 0.4 * sum * h / 3.0;
        assert!((v.get(0, 7) - reference).abs() < 1e-10, "{} vs {reference}", v.get(0, 7));
    }
}
