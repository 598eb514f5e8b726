use serde::Serialize;

use crate::cone::{cone_check, ConeOperator};
use crate::error::{Error, Result};
use crate::kernel::GridFunction;

use super::Annulus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Picard,
    Newton,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Picard => "picard",
            Method::Newton => "newton",
        }
    }
}

/// What a successful solve did.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub method: Method,
    pub iterations: usize,
    /// Final `||T u - u|| / ||u||`.
    pub residual: f64,
    /// Residual at the start of every iteration, then the final one.
    pub history: Vec<f64>,
    /// Final damping (Picard) or step length (Newton).
    pub damping: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PicardOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Initial damping `theta` in `u <- (1 - theta) u + theta T u`.
    pub damping: f64,
    /// Floor for the geometric damping reduction.
    pub min_damping: f64,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: 500,
            damping: 0.5,
            min_damping: 0.1,
        }
    }
}

/// Damped fixed-point iteration `u <- (1 - theta) u + theta T u` restricted to `annulus`.
///
/// `theta` halves (down to `min_damping`) whenever the residual grows. Converged when both
/// the relative update and the relative fixed-point residual are at most `tol`.
pub fn picard_solve(
    op: &ConeOperator,
    u0: &GridFunction,
    annulus: &Annulus,
    options: &PicardOptions,
) -> Result<(GridFunction, Diagnostics)> {
    if !(options.damping > 0.0 && options.damping <= 1.0 && options.min_damping > 0.0) {
        return Err(Error::Invalid(format!(
            "damping must lie in (0, 1] with a positive floor, got {} / {}",
            options.damping, options.min_damping
        )));
    }
    let membership = cone_check(u0, op.constants());
    if !membership.in_cone || u0.norm() == 0.0 {
        return Err(Error::Invalid(format!(
            "initial guess is not in the cone (min margin {:e})",
            membership.min_margin()
        )));
    }
    let mut u = u0.clone();
    annulus.project(&mut u);
    let mut theta = options.damping;
    let mut history = Vec::new();
    let mut update = f64::INFINITY;
    for iter in 0..=options.max_iter {
        let (tu, residual) = op.residual(&u)?;
        if let Some(&prev) = history.last() {
            if residual > prev {
                theta = (0.5 * theta).max(options.min_damping);
            }
        }
        history.push(residual);
        if residual <= options.tol && (iter == 0 || update <= options.tol) {
            return Ok((
                u,
                Diagnostics {
                    method: Method::Picard,
                    iterations: iter,
                    residual,
                    history,
                    damping: theta,
                },
            ));
        }
        if iter == options.max_iter {
            break;
        }
        let mut next = u.clone();
        for (x, t) in next.values_mut().iter_mut().zip(tu.values()) {
            *x = (1.0 - theta) * *x + theta * t;
        }
        annulus.project(&mut next);
        update = next.distance(&u) / next.norm();
        u = next;
    }
    Err(Error::NonConvergence {
        iterations: options.max_iter,
        residual: history.last().copied().unwrap_or(f64::NAN),
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

    fn op(beta: f64, lambda: f64) -> ConeOperator {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, beta, 2.0, 0.0).unwrap());
        let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, lambda).unwrap();
        ConeOperator::new(&spec, 64).unwrap()
    }

    #[test]
    fn converges_to_square_root() {
        let band = Annulus::new(0.05, 5.0).unwrap();
        let u0 = GridFunction::constant(64, 1.0, &[1.0]).unwrap();
        for lambda in [0.25, 1.0] {
            let (u, d) = picard_solve(&op(0.0, lambda), &u0, &band, &PicardOptions::default()).unwrap();
            assert!((u.norm() - lambda.sqrt()).abs() < 1e-10);
            assert!(d.residual < 1e-10);
        }
    }

    #[test]
    fn finds_small_root_of_cubic() {
        let band = Annulus::new(0.05, 1.0).unwrap();
        let u0 = GridFunction::constant(64, 1.0, &[0.5]).unwrap();
        let (u, _) = picard_solve(&op(1.0, 0.1), &u0, &band, &PicardOptions::default()).unwrap();
        assert!((u.norm() - 0.321_436_016_476_113_3).abs() < 1e-8, "{}", u.norm());
    }

    #[test]
    fn rejects_start_outside_cone_and_reports_history() {
        let band = Annulus::new(0.05, 5.0).unwrap();
        let bad = GridFunction::from_fn(1, 64, 1.0, |_, t| if t < 0.5 { 1.0 } else { 0.1 }).unwrap();
        assert!(matches!(
            picard_solve(&op(0.0, 1.0), &bad, &band, &PicardOptions::default()),
            Err(Error::Invalid(_))
        ));
        let u0 = GridFunction::constant(64, 1.0, &[3.0]).unwrap();
        let opts = PicardOptions {
            max_iter: 2,
            ..PicardOptions::default()
        };
        match picard_solve(&op(0.0, 1.0), &u0, &band, &opts) {
            Err(Error::NonConvergence { history, .. }) => assert_eq!(history.len(), 3),
            other => panic!("{other:?}"),
        }
    }
}
