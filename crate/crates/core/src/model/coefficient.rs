use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral;

/// How tabulated samples are interpolated between nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interpolation {
    Trigonometric,
    Linear,
}

impl Interpolation {
    pub fn as_str(self) -> &'static str {
        match self {
            Interpolation::Trigonometric => "trigonometric",
            Interpolation::Linear => "linear",
        }
    }
}

#[derive(Clone, Debug)]
pub enum CoefficientKind {
    Constant(f64),
    /// `mean + amplitude * sin(2 pi t / omega + phase)`
    Sinusoid { mean: f64, amplitude: f64, phase: f64 },
    /// One full period of equally spaced samples starting at t = 0.
    Tabulated {
        samples: Vec<f64>,
        interpolation: Interpolation,
        coeffs: Vec<Complex64>,
    },
}

/// An omega-periodic scalar coefficient such as `a_i`, `b_i` or `e_i`.
#[derive(Clone, Debug)]
pub struct PeriodicCoefficient {
    period: f64,
    kind: CoefficientKind,
}

fn check_period(period: f64) -> Result<()> {
    if period.is_finite() && period > 0.0 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("period must be positive, got {period}")))
    }
}

impl PeriodicCoefficient {
    pub fn constant(value: f64, period: f64) -> Result<Self> {
        check_period(period)?;
        if !value.is_finite() {
            return Err(Error::Invalid(format!("constant coefficient {value} is not finite")));
        }
        Ok(Self {
            period,
            kind: CoefficientKind::Constant(value),
        })
    }

    pub fn sinusoid(mean: f64, amplitude: f64, phase: f64, period: f64) -> Result<Self> {
        check_period(period)?;
        if !(mean.is_finite() && amplitude.is_finite() && phase.is_finite()) {
            return Err(Error::Invalid("sinusoid parameters must be finite".into()));
        }
        Ok(Self {
            period,
            kind: CoefficientKind::Sinusoid { mean, amplitude, phase },
        })
    }

    pub fn tabulated(samples: Vec<f64>, interpolation: Interpolation, period: f64) -> Result<Self> {
        check_period(period)?;
        if samples.len() < 2 {
            return Err(Error::Invalid("tabulated coefficient needs at least 2 samples".into()));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("tabulated samples must be finite".into()));
        }
        let coeffs = match interpolation {
            Interpolation::Trigonometric => spectral::coefficients(&samples),
            Interpolation::Linear => Vec::new(),
        };
        Ok(Self {
            period,
            kind: CoefficientKind::Tabulated {
                samples,
                interpolation,
                coeffs,
            },
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn kind(&self) -> &CoefficientKind {
        &self.kind
    }

    pub fn eval(&self, t: f64) -> f64 {
        let tau = t.rem_euclid(self.period);
        match &self.kind {
            CoefficientKind::Constant(v) => *v,
            CoefficientKind::Sinusoid { mean, amplitude, phase } => {
                mean + amplitude * (2.0 * PI * tau / self.period + phase).sin()
            }
            CoefficientKind::Tabulated {
                samples,
                interpolation: Interpolation::Linear,
                ..
            } => {
                let len = samples.len();
                let x = tau / self.period * len as f64;
                let k = (x.floor() as usize).min(len - 1);
                let frac = x - k as f64;
                samples[k] * (1.0 - frac) + samples[(k + 1) % len] * frac
            }
            CoefficientKind::Tabulated { coeffs, .. } => spectral::interpolate(coeffs, self.period, tau),
        }
    }

    /// Values on the uniform grid `t_k = k * period / m`.
    pub fn sample(&self, m: usize) -> Vec<f64> {
        (0..m).map(|k| self.eval(self.period * k as f64 / m as f64)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinusoid_matches_formula() {
        let c = PeriodicCoefficient::sinusoid(1.0, 0.5, 0.3, 2.0).unwrap();
        let t = 0.7;
        assert!((c.eval(t) - (1.0 + 0.5 * (PI * t + 0.3).sin())).abs() < 1e-15);
    }

    #[test]
    fn linear_table_wraps_around() {
        let c = PeriodicCoefficient::tabulated(vec![0.0, 1.0, 2.0, 3.0], Interpolation::Linear, 1.0).unwrap();
        assert!((c.eval(0.125) - 0.5).abs() < 1e-15);
        // between the last sample and the first one of the next period
        assert!((c.eval(0.875) - 1.5).abs() < 1e-15);
        assert!((c.eval(1.125) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trigonometric_table_interpolates_nodes() {
        let samples = vec![1.0, 2.0, 0.5, 1.5, 1.0, 0.25];
        let c = PeriodicCoefficient::tabulated(samples.clone(), Interpolation::Trigonometric, 3.0).unwrap();
        for (k, s) in samples.iter().enumerate() {
            assert!((c.eval(0.5 * k as f64) - s).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PeriodicCoefficient::constant(1.0, 0.0).is_err());
        assert!(PeriodicCoefficient::constant(f64::NAN, 1.0).is_err());
        assert!(PeriodicCoefficient::tabulated(vec![1.0], Interpolation::Linear, 1.0).is_err());
    }
}
