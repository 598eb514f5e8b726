// Count solutions of `1/x + x^2` across lambda. Two branches merge at the fold
// `lambda* = 2^(2/3)/3` and vanish beyond it.

use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};
use singular_periodic::solver::{lambda_grid, lambda_sweep, SolveOptions};

fn main() -> singular_periodic::Result<()> {
    let one = PeriodicCoefficient::constant(1.0, 1.0)?;
    let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 1.0, 2.0, 0.0)?);
    let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 0.1)?;
    let op = ConeOperator::new(&spec, 64)?;

    let fold = 2f64.powf(2.0 / 3.0) / 3.0;
    let lambdas = lambda_grid(0.05, 0.8, 16, true)?;
    for row in lambda_sweep(&op, &lambdas, &SolveOptions::default())? {
        let side = if row.lambda < fold { "below" } else { "above" };
        println!("lambda {:.4} ({side} fold): {} {:?}", row.lambda, row.count, row.norms);
    }
    Ok(())
}
