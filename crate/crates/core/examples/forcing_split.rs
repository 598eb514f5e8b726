// A sign-changing forcing term `e`: check where the even split of `b f + e` stays
// nonnegative, then solve the forced problem.

use singular_periodic::certify::e_split_feasibility;
use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};
use singular_periodic::solver::{ode_residual_forced, solve, SolveOptions};

fn main() -> singular_periodic::Result<()> {
    let one = PeriodicCoefficient::constant(1.0, 1.0)?;
    let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0)?);
    let e = PeriodicCoefficient::sinusoid(-0.5, 1.0, 0.0, 1.0)?;
    let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 1.0)?.with_forcing(vec![e])?;

    for (ra, rb) in [(0.1, 0.2), (0.3, 0.6), (1.0, 2.0)] {
        let r = e_split_feasibility(&spec, ra, rb, 128, 1000)?;
        println!(
            "[{ra}, {rb}]: min split {:+.4} at t = {:.3} -> {}",
            r.min_split[0],
            r.argmin_t[0],
            if r.feasible { "feasible" } else { "infeasible" }
        );
    }

    let op = ConeOperator::new(&spec, 128)?.with_forcing(true);
    let report = solve(&op, &SolveOptions::default())?;
    for s in &report.solutions {
        let lo = s.u.component(0).iter().copied().fold(f64::INFINITY, f64::min);
        println!(
            "forced solution: norm {:.8}, min {lo:.8}, ode residual {:.1e}",
            s.norm,
            ode_residual_forced(&s.u, &spec)
        );
    }
    Ok(())
}
