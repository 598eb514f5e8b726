// A two-component system with a coupled nonlinearity supplied as a closure.

use singular_periodic::certify::{build_certificate, CertifyOptions, ExistenceCase};
use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{state_norm, Nonlinearity, PeriodicCoefficient, SystemSpec};
use singular_periodic::solver::{solve, SolveOptions};

fn main() -> singular_periodic::Result<()> {
    let omega = 2.0;
    let a = vec![
        PeriodicCoefficient::sinusoid(1.0, 0.5, 0.0, omega)?,
        PeriodicCoefficient::constant(0.7, omega)?,
    ];
    let b = vec![
        PeriodicCoefficient::constant(1.0, omega)?,
        PeriodicCoefficient::sinusoid(1.0, 0.8, 2.0, omega)?,
    ];
    // f_1 = 1/sqrt|u| + u_2 / (1 + |u|), f_2 = 1/|u|
    let f = Nonlinearity::custom(2, "coupled", |i, u| {
        let r = state_norm(u);
        match i {
            0 => 1.0 / r.sqrt() + u[1] / (1.0 + r),
            _ => 1.0 / r,
        }
    });
    let spec = SystemSpec::new(omega, a, b, f, 0.4)?;
    let op = ConeOperator::new(&spec, 64)?;

    let profile = spec.f().asymptotic_class();
    println!("probed: {:?}, singular at 0: {}", profile.growth, profile.singular_at_zero);
    if let Some(case) = ExistenceCase::detect(&op) {
        let cert = build_certificate(&op, case, spec.lambda(), &CertifyOptions::default())?;
        println!("case {}: overall {}", case.as_str(), cert.overall);
    }

    let report = solve(&op, &SolveOptions::default())?;
    for s in &report.solutions {
        println!(
            "norm {:.10}, fp residual {:.1e}, ode residual {:.1e}, cone margins {:?}",
            s.norm, s.fp_residual, s.ode_residual, s.margins
        );
    }
    Ok(())
}
