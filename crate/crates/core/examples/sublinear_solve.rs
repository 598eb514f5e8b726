// `x' = -x + lambda/x` has exactly one positive periodic solution, the constant `sqrt(lambda)`.

use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};
use singular_periodic::solver::{solve, SolveOptions};

fn main() -> singular_periodic::Result<()> {
    let one = PeriodicCoefficient::constant(1.0, 1.0)?;
    let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0)?);
    let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 1.0)?;
    let op = ConeOperator::new(&spec, 128)?;

    for lambda in [0.1, 0.25, 1.0, 2.0] {
        let report = solve(&op.with_lambda(lambda)?, &SolveOptions::default())?;
        for s in &report.solutions {
            println!(
                "lambda {lambda:<4}: norm {:.12} (sqrt = {:.12}), ode residual {:.1e}, poincare {:.1e}, {} via {}",
                s.norm,
                lambda.sqrt(),
                s.ode_residual,
                s.poincare_mismatch,
                s.iterations,
                s.method.as_str()
            );
        }
    }
    Ok(())
}
