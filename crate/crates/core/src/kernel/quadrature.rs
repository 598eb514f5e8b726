use crate::error::{Error, Result};

/// Smallest grid accepted by quadrature-based operations.
pub const MIN_GRID: usize = 16;

/// Trapezoidal rule on a uniform periodic grid: `omega / m * sum_k g(t_k)`.
///
/// For smooth periodic integrands the error decays faster than any power of `1/m`.
pub fn periodic_quadrature(samples: &[f64], omega: f64) -> Result<f64> {
    let m = samples.len();
    if m < MIN_GRID {
        return Err(Error::Invalid(format!("quadrature needs m >= {MIN_GRID}, got {m}")));
    }
    if let Some(k) = samples.iter().position(|x| !x.is_finite()) {
        return Err(Error::Evaluation {
            what: "quadrature sample".into(),
            t: omega * k as f64 / m as f64,
        });
    }
    Ok(samples.iter().sum::<f64>() * omega / m as f64)
}
