//! Fourier helpers for real samples on a uniform periodic grid.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Normalized DFT coefficients `c_l = (1/m) sum_k x_k e^{-2 pi i l k / m}`.
pub(crate) fn coefficients(samples: &[f64]) -> Vec<Complex64> {
    let m = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

fn inverse(mut coeffs: Vec<Complex64>) -> Vec<f64> {
    let m = coeffs.len();
    FftPlanner::new().plan_fft_inverse(m).process(&mut coeffs);
    coeffs.iter().map(|c| c.re).collect()
}

/// Signed wavenumber of DFT slot `l`; the Nyquist slot of an even grid maps to `None`.
fn wavenumber(l: usize, m: usize) -> Option<i64> {
    if m.is_multiple_of(2) && l == m / 2 {
        None
    } else if l <= m / 2 {
        Some(l as i64)
    } else {
        Some(l as i64 - m as i64)
    }
}

/// Evaluates the real trigonometric interpolant defined by `coeffs` at `t`.
pub(crate) fn interpolate(coeffs: &[Complex64], omega: f64, t: f64) -> f64 {
    let m = coeffs.len();
    let base = 2.0 * PI * t.rem_euclid(omega) / omega;
    let mut acc = coeffs[0].re;
    for (l, c) in coeffs.iter().enumerate().take(m / 2 + 1).skip(1) {
        let phase = base * l as f64;
        match wavenumber(l, m) {
            Some(_) => acc += 2.0 * (c.re * phase.cos() - c.im * phase.sin()),
            None => acc += c.re * phase.cos(),
        }
    }
    acc
}

/// Spectral derivative on the grid (Nyquist mode dropped).
pub(crate) fn derivative(samples: &[f64], omega: f64) -> Vec<f64> {
    let m = samples.len();
    let mut coeffs = coefficients(samples);
    for (l, c) in coeffs.iter_mut().enumerate() {
        *c = match wavenumber(l, m) {
            Some(k) => *c * Complex64::new(0.0, 2.0 * PI * k as f64 / omega),
            None => Complex64::new(0.0, 0.0),
        };
    }
    inverse(coeffs)
}

/// Splits the antiderivative of a periodic sample set into `mean * t + P(t)`.
///
/// Returns the mean and the Fourier coefficients of the zero-mean periodic part `P`,
/// normalized so that `P` has zero mean.
pub(crate) fn antiderivative(samples: &[f64], omega: f64) -> (f64, Vec<Complex64>) {
    let m = samples.len();
    let mut coeffs = coefficients(samples);
    let mean = coeffs[0].re;
    coeffs[0] = Complex64::new(0.0, 0.0);
    for (l, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = match wavenumber(l, m) {
            Some(k) => *c / Complex64::new(0.0, 2.0 * PI * k as f64 / omega),
            // cos at Nyquist integrates to a sine that vanishes on every node
            None => Complex64::new(0.0, 0.0),
        };
    }
    (mean, coeffs)
}

/// Grid values of a trigonometric polynomial given by normalized coefficients.
pub(crate) fn synthesize(coeffs: &[Complex64]) -> Vec<f64> {
    inverse(coeffs.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize, omega: f64) -> Vec<f64> {
        (0..m).map(|k| omega * k as f64 / m as f64).collect()
    }

    #[test]
    fn derivative_of_sine() {
        let omega = 2.0;
        let ts = grid(32, omega);
        let xs: Vec<f64> = ts.iter().map(|t| (2.0 * PI * t / omega).sin()).collect();
        let d = derivative(&xs, omega);
        for (t, v) in ts.iter().zip(&d) {
            let exact = 2.0 * PI / omega * (2.0 * PI * t / omega).cos();
            assert!((v - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn antiderivative_splits_mean() {
        let omega = 1.0;
        let ts = grid(16, omega);
        let xs: Vec<f64> = ts.iter().map(|t| 3.0 + (2.0 * PI * t).cos()).collect();
        let (mean, coeffs) = antiderivative(&xs, omega);
        assert!((mean - 3.0).abs() < 1e-14);
        let p = synthesize(&coeffs);
        for (t, v) in ts.iter().zip(&p) {
            assert!((v - (2.0 * PI * t).sin() / (2.0 * PI)).abs() < 1e-14);
        }
    }

    #[test]
    fn interpolation_reproduces_nodes_and_band_limited_values() {
        let omega = 3.0;
        let m = 8;
        let f = |t: f64| 1.0 + (2.0 * PI * t / omega).sin() - 0.5 * (4.0 * PI * t / omega).cos();
        let xs: Vec<f64> = grid(m, omega).into_iter().map(f).collect();
        let c = coefficients(&xs);
        for t in [0.0, 0.1, 1.234, 2.999, -0.7] {
            assert!((interpolate(&c, omega, t) - f(t)).abs() < 1e-13);
        }
    }
}
