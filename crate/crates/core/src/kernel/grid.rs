use crate::error::{Error, Result};

/// An omega-periodic vector function sampled at `t_k = k * omega / m`, `k = 0..m`.
///
/// Values are stored component-major: entry `(i, k)` lives at `i * m + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    n: usize,
    m: usize,
    omega: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(n: usize, m: usize, omega: f64, values: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Invalid("grid function needs n >= 1 and m >= 1".into()));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Invalid(format!("omega must be positive, got {omega}")));
        }
        if values.len() != n * m {
            return Err(Error::Invalid(format!(
                "expected {} values for n={n}, m={m}, got {}",
                n * m,
                values.len()
            )));
        }
        Ok(Self { n, m, omega, values })
    }

    /// Constant profile `u_i(t) = levels[i]`.
    pub fn constant(m: usize, omega: f64, levels: &[f64]) -> Result<Self> {
        let values = levels.iter().flat_map(|&c| std::iter::repeat_n(c, m)).collect();
        Self::new(levels.len(), m, omega, values)
    }

    pub fn from_fn(n: usize, m: usize, omega: f64, mut f: impl FnMut(usize, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(n * m);
        for i in 0..n {
            for k in 0..m {
                values.push(f(i, omega * k as f64 / m as f64));
            }
        }
        Self::new(n, m, omega, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn node(&self, k: usize) -> f64 {
        self.omega * k as f64 / self.m as f64
    }

    pub fn component(&self, i: usize) -> &[f64] {
        &self.values[i * self.m..(i + 1) * self.m]
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.m + k]
    }

    /// Writes the state vector `u(t_k)` into `out`.
    pub fn state_into(&self, k: usize, out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.values[i * self.m + k];
        }
    }

    pub fn state(&self, k: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.state_into(k, &mut out);
        out
    }

    /// `sum_i max_k |u_i(t_k)|`
    pub fn norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.component(i).iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
            .sum()
    }

    /// `min_k sum_i |u_i(t_k)|`
    pub fn min_shell(&self) -> f64 {
        (0..self.m)
            .map(|k| (0..self.n).map(|i| self.get(i, k).abs()).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    /// Periodic linear interpolation of component `i`.
    pub fn eval(&self, i: usize, t: f64) -> f64 {
        let x = t.rem_euclid(self.omega) / self.omega * self.m as f64;
        let k = (x.floor() as usize).min(self.m - 1);
        let frac = x - k as f64;
        let row = self.component(i);
        row[k] * (1.0 - frac) + row[(k + 1) % self.m] * frac
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|x| *x *= factor);
        out
    }

    /// Sup-norm-sum distance `||self - other||`.
    pub fn distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.values.len(), other.values.len());
        (0..self.n)
            .map(|i| {
                self.component(i)
                    .iter()
                    .zip(other.component(i))
                    .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
            })
            .sum()
    }

    /// Largest pointwise difference over all components and nodes.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && (self.omega - other.omega).abs() <= 1e-12 * self.omega
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_sum_of_sups() {
        let u = GridFunction::new(2, 2, 1.0, vec![1.0, -3.0, 0.5, 0.25]).unwrap();
        assert_eq!(u.norm(), 3.5);
        assert_eq!(u.min_shell(), 1.5);
        assert_eq!(u.state(1), vec![-3.0, 0.25]);
    }

    #[test]
    fn interpolation_is_periodic() {
        let u = GridFunction::from_fn(1, 8, 2.0, |_, t| t * (2.0 - t)).unwrap();
        for t in [0.1, 0.77, 1.9] {
            assert!((u.eval(0, t) - u.eval(0, t + 2.0)).abs() < 1e-14);
        }
        assert_eq!(u.eval(0, 0.5), u.get(0, 2));
    }
}
