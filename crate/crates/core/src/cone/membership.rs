use crate::kernel::{ConeConstants, GridFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct ConeMembership {
    pub in_cone: bool,
    /// `min_t u_i(t) - sigma_i sup_t |u_i(t)|` per component.
    pub margins: Vec<f64>,
    /// `min_t sum_i |u_i(t)|`
    pub min_shell: f64,
}

impl ConeMembership {
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Absolute tolerance on cone margins for a function of norm `norm`.
pub fn cone_tolerance(norm: f64) -> f64 {
    1e-10 * (1.0 + norm)
}

/// Membership test for `K = { u : u_i(t) >= sigma_i sup |u_i| }` on grid values.
pub fn cone_check(u: &GridFunction, constants: &ConeConstants) -> ConeMembership {
    let margins: Vec<f64> = (0..u.n())
        .map(|i| {
            let row = u.component(i);
            let min = row.iter().copied().fold(f64::INFINITY, f64::min);
            let sup = row.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            min - constants.sigma_i[i] * sup
        })
        .collect();
    let tol = cone_tolerance(u.norm());
    ConeMembership {
        in_cone: margins.iter().all(|&g| g >= -tol),
        margins,
        min_shell: u.min_shell(),
    }
}
