use nalgebra::{DMatrix, DVector};

use crate::cone::{cone_check, ConeOperator, SINGULARITY_FLOOR};
use crate::error::{Error, Result};
use crate::kernel::GridFunction;

use super::{Annulus, Diagnostics, Method};

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Backtracking gives up below this step length.
    pub min_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: 100,
            min_step: 1e-10,
        }
    }
}

/// Jacobian of `u -> T u` on the grid, unknowns ordered component-major.
///
/// Entry `((i,k),(j,l))` is `lambda e^{-P_i(t_k)} w_i[(l-k) mod m] e^{P_i(t_l)} b_i(t_l)
/// d f_i / d u_j (u(t_l))`, with the partials of `f` by central differences.
pub(crate) fn operator_jacobian(op: &ConeOperator, u: &GridFunction) -> Result<DMatrix<f64>> {
    op.check_input(u)?;
    let (n, m) = (op.n(), op.m());
    let f = op.spec().f();
    let lambda = op.lambda();
    let tables = &op.kernel().components;
    // partials[l][i][j] = d f_i / d u_j at u(t_l)
    let mut partials = vec![vec![vec![0.0; n]; n]; m];
    let mut state = vec![0.0; n];
    let mut probe = vec![0.0; n];
    for (l, block) in partials.iter_mut().enumerate() {
        u.state_into(l, &mut state);
        let rho: f64 = state.iter().map(|x| x.abs()).sum();
        for j in 0..n {
            let h = 1e-6 * rho;
            // stay on the positive side of a coordinate near zero
            let (lo, hi) = if state[j] > h { (state[j] - h, state[j] + h) } else { (state[j], state[j] + h) };
            for (i, row) in block.iter_mut().enumerate() {
                probe.copy_from_slice(&state);
                probe[j] = hi;
                let fp = f.eval(i, &probe);
                probe[j] = lo;
                let fm = f.eval(i, &probe);
                let d = (fp - fm) / (hi - lo);
                if !d.is_finite() {
                    return Err(Error::Evaluation {
                        what: format!("d f_{} / d u_{}", i + 1, j + 1),
                        t: u.node(l),
                    });
                }
                row[j] = d;
            }
        }
    }
    let mut jac = DMatrix::zeros(n * m, n * m);
    for (i, table) in tables.iter().enumerate() {
        for k in 0..m {
            let left = lambda * (-table.periodic_nodes[k]).exp();
            for l in 0..m {
                let d = if l >= k { l - k } else { l + m - k };
                let common = left * table.weights[d] * table.periodic_nodes[l].exp() * table.b_nodes[l];
                for j in 0..n {
                    jac[(i * m + k, j * m + l)] = common * partials[l][i][j];
                }
            }
        }
    }
    Ok(jac)
}

fn merit(tu: &GridFunction, u: &GridFunction) -> f64 {
    tu.values()
        .iter()
        .zip(u.values())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Newton's method on `F(u) = T u - u` with backtracking on `||F||_2` and the annulus
/// projection. Succeeds once `||T u - u|| / ||u|| <= tol`.
pub fn residual_solve(
    op: &ConeOperator,
    u0: &GridFunction,
    annulus: &Annulus,
    options: &NewtonOptions,
) -> Result<(GridFunction, Diagnostics)> {
    let membership = cone_check(u0, op.constants());
    if !membership.in_cone || u0.norm() == 0.0 {
        return Err(Error::Invalid(format!(
            "initial guess is not in the cone (min margin {:e})",
            membership.min_margin()
        )));
    }
    let mut u = u0.clone();
    annulus.project(&mut u);
    let (mut tu, mut residual) = op.residual(&u)?;
    let mut history = vec![residual];
    let mut step = 1.0;
    let stalled = |history: Vec<f64>, iterations: usize, residual: f64| Error::NonConvergence {
        iterations,
        residual,
        history,
    };
    for iter in 0..=options.max_iter {
        if residual <= options.tol {
            return Ok((
                u,
                Diagnostics {
                    method: Method::Newton,
                    iterations: iter,
                    residual,
                    history,
                    damping: step,
                },
            ));
        }
        if iter == options.max_iter {
            break;
        }
        let mut jac = operator_jacobian(op, &u)?;
        for d in 0..jac.nrows() {
            jac[(d, d)] -= 1.0;
        }
        let rhs = DVector::from_iterator(u.values().len(), tu.values().iter().zip(u.values()).map(|(a, b)| b - a));
        let Some(dx) = jac.lu().solve(&rhs) else {
            return Err(stalled(history, iter, residual));
        };
        let current = merit(&tu, &u);
        step = 1.0;
        loop {
            let mut trial = u.clone();
            for (x, d) in trial.values_mut().iter_mut().zip(dx.iter()) {
                *x += step * d;
            }
            annulus.project(&mut trial);
            if trial.values().iter().all(|&x| x > 0.0) && trial.min_shell() > SINGULARITY_FLOOR {
                let (t_trial, r_trial) = op.residual(&trial)?;
                if merit(&t_trial, &trial) <= (1.0 - 1e-4 * step) * current {
                    u = trial;
                    tu = t_trial;
                    residual = r_trial;
                    break;
                }
            }
            step *= 0.5;
            if step < options.min_step {
                return Err(stalled(history, iter + 1, residual));
            }
        }
        history.push(residual);
    }
    Err(stalled(history, options.max_iter, residual))
}
