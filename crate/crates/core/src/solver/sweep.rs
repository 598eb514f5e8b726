use std::thread;

use serde::Serialize;

use crate::cone::ConeOperator;
use crate::error::{Error, Result};

use super::{solve, SolveOptions};

/// Solutions found at one `lambda`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub count: usize,
    pub norms: Vec<f64>,
    /// Set when the solve at this `lambda` failed outright.
    pub error: Option<String>,
}

/// `steps` values from `min` to `max`, linearly or geometrically spaced.
pub fn lambda_grid(min: f64, max: f64, steps: usize, log: bool) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min && max.is_finite() && steps >= 1) {
        return Err(Error::Domain(format!(
            "lambda range needs 0 < min <= max and at least one step, got {min}:{max}:{steps}"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let s = |j: usize| j as f64 / (steps - 1) as f64;
    Ok((0..steps)
        .map(|j| {
            if j == 0 {
                min
            } else if j == steps - 1 {
                max
            } else if log {
                (min.ln() + (max.ln() - min.ln()) * s(j)).exp()
            } else {
                min + (max - min) * s(j)
            }
        })
        .collect())
}

/// Multistart solves at every `lambda`, fanned out over threads; rows come back in `lambda` order.
pub fn lambda_sweep(op: &ConeOperator, lambdas: &[f64], options: &SolveOptions) -> Result<Vec<SweepRow>> {
    if options.starts < 4 {
        return Err(Error::Invalid(format!("a sweep needs at least 4 starts, got {}", options.starts)));
    }
    if lambdas.iter().any(|&l| !(l > 0.0 && l.is_finite())) || lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invalid("lambda grid must be positive and strictly ascending".into()));
    }
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(lambdas.len())
        .max(1);
    let run = |lambda: f64| -> SweepRow {
        match op.with_lambda(lambda).and_then(|o| solve(&o, options)) {
            Ok(report) => SweepRow {
                lambda,
                count: report.solutions.len(),
                norms: report.norms(),
                error: None,
            },
            Err(e) => SweepRow {
                lambda,
                count: 0,
                norms: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    };
    let mut rows: Vec<Option<SweepRow>> = vec![None; lambdas.len()];
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let run = &run;
                scope.spawn(move || {
                    (w..lambdas.len())
                        .step_by(workers)
                        .map(|j| (j, run(lambdas[j])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (j, row) in h.join().expect("sweep worker panicked") {
                rows[j] = Some(row);
            }
        }
    });
    Ok(rows.into_iter().map(|r| r.expect("every lambda is assigned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

    #[test]
    fn grids() {
        let lin = lambda_grid(1.0, 2.0, 3, false).unwrap();
        assert_eq!(lin, vec![1.0, 1.5, 2.0]);
        let log = lambda_grid(0.01, 1.0, 3, true).unwrap();
        assert!((log[1] - 0.1).abs() < 1e-15);
        assert!(lambda_grid(0.0, 1.0, 3, false).is_err());
    }

    #[test]
    fn inverse_sweep_has_one_branch() {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 1.0).unwrap();
        let op = ConeOperator::new(&spec, 32).unwrap();
        let lambdas = [0.1, 0.5, 1.0, 2.0];
        let rows = lambda_sweep(&op, &lambdas, &SolveOptions::default()).unwrap();
        for (row, l) in rows.iter().zip(lambdas) {
            assert_eq!(row.lambda, l);
            assert_eq!(row.count, 1);
            assert!((row.norms[0] - l.sqrt()).abs() < 1e-9);
        }
        assert!(lambda_sweep(&op, &[1.0, 0.5], &SolveOptions::default()).is_err());
    }
}
