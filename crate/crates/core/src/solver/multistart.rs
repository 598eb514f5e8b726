use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::{cone_check, random_cone_element, ConeOperator};
use crate::error::Result;
use crate::kernel::GridFunction;
use crate::model::CoefficientKind;

use super::{
    ode_residual, ode_residual_forced, picard_solve, poincare_check, poincare_check_forced, residual_solve, Annulus,
    Diagnostics, Method, NewtonOptions, PicardOptions,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Relative fixed-point residual required of every reported solution.
    pub tol: f64,
    pub max_iter: usize,
    pub newton_max_iter: usize,
    /// Number of log-spaced starting levels.
    pub starts: usize,
    /// Reference radius: starts span `[1e-2 r1, 1e2 r1]`, the default band `[1e-4 r1, 1e4 r1]`.
    pub r1: f64,
    pub annulus: Option<Annulus>,
    pub rk_tol: f64,
    /// Seed for the non-constant starts.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: 500,
            newton_max_iter: 100,
            starts: 8,
            r1: 1.0,
            annulus: None,
            rk_tol: 1e-10,
            seed: 0,
        }
    }
}

impl SolveOptions {
    pub fn band(&self) -> Result<Annulus> {
        match self.annulus {
            Some(a) => Ok(a),
            None => Annulus::new(1e-4 * self.r1, 1e4 * self.r1),
        }
    }
}

/// One attempted solve from one start.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StartOutcome {
    pub start_norm: f64,
    pub method: Method,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionRecord {
    /// 1-based, in order of increasing norm.
    pub id: usize,
    pub u: GridFunction,
    pub norm: f64,
    pub fp_residual: f64,
    pub ode_residual: f64,
    /// `NaN` when the integrator failed.
    pub poincare_mismatch: f64,
    pub margins: Vec<f64>,
    pub in_cone: bool,
    pub iterations: usize,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub lambda: f64,
    pub annulus: Annulus,
    pub solutions: Vec<SolutionRecord>,
    pub attempts: Vec<StartOutcome>,
}

impl SolveReport {
    pub fn norms(&self) -> Vec<f64> {
        self.solutions.iter().map(|s| s.norm).collect()
    }
}

fn has_variable_coefficients(op: &ConeOperator) -> bool {
    let spec = op.spec();
    spec.a()
        .iter()
        .chain(spec.b())
        .any(|c| !matches!(c.kind(), CoefficientKind::Constant(_)))
}

/// Starting profiles: constants `u_i = c / n` at log-spaced levels `c`, plus smooth
/// non-constant cone elements at the same norms when the coefficients vary in time.
pub fn initial_guesses(op: &ConeOperator, options: &SolveOptions) -> Result<Vec<GridFunction>> {
    let (n, m) = (op.n(), op.m());
    let k = options.starts.max(1);
    let (lo, hi) = ((1e-2 * options.r1).ln(), (1e2 * options.r1).ln());
    let levels: Vec<f64> = (0..k)
        .map(|j| {
            let s = if k == 1 { 0.5 } else { j as f64 / (k - 1) as f64 };
            (lo + (hi - lo) * s).exp()
        })
        .collect();
    let mut out = Vec::new();
    for &c in &levels {
        out.push(GridFunction::constant(m, op.omega(), &vec![c / n as f64; n])?);
    }
    if has_variable_coefficients(op) {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for &c in &levels {
            out.push(random_cone_element(&mut rng, &op.constants().sigma_i, m, op.omega(), c)?);
        }
    }
    Ok(out)
}

fn outcome(start: &GridFunction, method: Method, result: &Result<(GridFunction, Diagnostics)>) -> StartOutcome {
    match result {
        Ok((_, d)) => StartOutcome {
            start_norm: start.norm(),
            method,
            converged: true,
            iterations: d.iterations,
            residual: d.residual,
        },
        Err(crate::Error::NonConvergence {
            iterations, residual, ..
        }) => StartOutcome {
            start_norm: start.norm(),
            method,
            converged: false,
            iterations: *iterations,
            residual: *residual,
        },
        Err(_) => StartOutcome {
            start_norm: start.norm(),
            method,
            converged: false,
            iterations: 0,
            residual: f64::NAN,
        },
    }
}

/// Tightens a converged iterate so that copies of one solution cluster well inside the
/// merge radius; keeps the original if the extra Newton steps fail.
fn polish(
    op: &ConeOperator,
    u: GridFunction,
    d: Diagnostics,
    band: &Annulus,
    options: &NewtonOptions,
) -> (GridFunction, Diagnostics) {
    match residual_solve(op, &u, band, options) {
        Ok((p, pd)) => (
            p,
            Diagnostics {
                iterations: d.iterations + pd.iterations,
                residual: pd.residual,
                ..d
            },
        ),
        Err(_) => (u, d),
    }
}

/// Runs Picard and Newton from every start, keeps converged cone solutions and merges
/// those within `10 tol (1 + ||u||)` of each other.
pub fn solve(op: &ConeOperator, options: &SolveOptions) -> Result<SolveReport> {
    let band = options.band()?;
    let picard_opts = PicardOptions {
        tol: options.tol,
        max_iter: options.max_iter,
        ..PicardOptions::default()
    };
    let newton_opts = NewtonOptions {
        tol: options.tol,
        max_iter: options.newton_max_iter,
        ..NewtonOptions::default()
    };
    let polish_opts = NewtonOptions {
        tol: options.tol * 1e-3,
        max_iter: 8,
        ..NewtonOptions::default()
    };
    let mut attempts = Vec::new();
    let mut candidates: Vec<(GridFunction, Diagnostics)> = Vec::new();
    for start in initial_guesses(op, options)? {
        let picard = picard_solve(op, &start, &band, &picard_opts);
        attempts.push(outcome(&start, Method::Picard, &picard));
        if let Ok((u, d)) = picard {
            candidates.push(polish(op, u, d, &band, &polish_opts));
        }
        let newton = residual_solve(op, &start, &band, &newton_opts);
        attempts.push(outcome(&start, Method::Newton, &newton));
        if let Ok((u, d)) = newton {
            candidates.push(polish(op, u, d, &band, &polish_opts));
        }
    }

    candidates.retain(|(u, d)| d.residual <= options.tol && cone_check(u, op.constants()).in_cone);
    candidates.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()));
    let mut kept: Vec<(GridFunction, Diagnostics)> = Vec::new();
    for (u, d) in candidates {
        let radius = 10.0 * options.tol * (1.0 + u.norm());
        match kept.iter_mut().find(|(v, _)| v.max_abs_diff(&u) <= radius) {
            Some(existing) => {
                if d.residual < existing.1.residual {
                    *existing = (u, d);
                }
            }
            None => kept.push((u, d)),
        }
    }

    let spec = op.spec();
    let solutions = kept
        .into_iter()
        .enumerate()
        .map(|(idx, (u, d))| {
            let membership = cone_check(&u, op.constants());
            let (ode, poincare) = if op.forcing() {
                (ode_residual_forced(&u, spec), poincare_check_forced(&u, spec, options.rk_tol))
            } else {
                (ode_residual(&u, spec), poincare_check(&u, spec, options.rk_tol))
            };
            SolutionRecord {
                id: idx + 1,
                norm: u.norm(),
                fp_residual: d.residual,
                ode_residual: ode,
                poincare_mismatch: poincare.unwrap_or(f64::NAN),
                margins: membership.margins,
                in_cone: membership.in_cone,
                iterations: d.iterations,
                method: d.method,
                u,
            }
        })
        .collect();
    Ok(SolveReport {
        lambda: op.lambda(),
        annulus: band,
        solutions,
        attempts,
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
        ConeOperator::new(&spec, 32).unwrap()
    }

    #[test]
    fn single_solution_for_inverse() {
        let report = solve(&op(0.0, 0.5), &SolveOptions::default()).unwrap();
        assert_eq!(report.solutions.len(), 1, "{:?}", report.norms());
        let s = &report.solutions[0];
        assert!((s.norm - 0.5f64.sqrt()).abs() < 1e-9);
        assert!(s.in_cone && s.ode_residual < 1e-8 && s.poincare_mismatch < 1e-8);
    }

    #[test]
    fn two_solutions_for_cubic() {
        let report = solve(&op(1.0, 0.1), &SolveOptions::default()).unwrap();
        let norms = report.norms();
        assert_eq!(norms.len(), 2, "{norms:?}");
        assert!((norms[0] - 0.321_436_016_476_113_3).abs() < 1e-8);
        assert!((norms[1] - 9.989_979_929_698_562).abs() < 1e-8);
        assert_eq!(report.solutions[1].method, Method::Newton);
    }

    #[test]
    fn variable_coefficients_add_starts() {
        let a = PeriodicCoefficient::sinusoid(1.0, 0.5, 0.0, 1.0).unwrap();
        let b = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        let spec = SystemSpec::new(1.0, vec![a], vec![b], f, 1.0).unwrap();
        let op = ConeOperator::new(&spec, 32).unwrap();
        let opts = SolveOptions {
            starts: 4,
            ..SolveOptions::default()
        };
        assert_eq!(initial_guesses(&op, &opts).unwrap().len(), 8);
        let report = solve(&op, &opts).unwrap();
        assert_eq!(report.solutions.len(), 1);
        assert!(report.solutions[0].ode_residual < 1e-6);
    }
}
