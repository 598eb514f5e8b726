// `f = 1/x + x^2` at `lambda = 0.1`: a small Picard-stable solution and a large one that only
// the Newton solver reaches. Their levels solve `c^3 - 10 c^2 + 1 = 0`.

use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};
use singular_periodic::solver::{solve, SolveOptions};

fn main() -> singular_periodic::Result<()> {
    let one = PeriodicCoefficient::constant(1.0, 1.0)?;
    let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 1.0, 2.0, 0.0)?);
    let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 0.1)?;
    let report = solve(&ConeOperator::new(&spec, 128)?, &SolveOptions::default())?;

    for s in &report.solutions {
        let c = s.norm;
        println!(
            "#{} norm {c:.12}  cubic {:+.1e}  {} ({} iterations)",
            s.id,
            c * c * c - 10.0 * c * c + 1.0,
            s.method.as_str(),
            s.iterations
        );
    }
    let converged = report.attempts.iter().filter(|a| a.converged).count();
    println!("{converged} of {} attempts converged", report.attempts.len());
    Ok(())
}
