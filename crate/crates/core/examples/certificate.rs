// Build existence certificates for each case and re-test their boundary claims directly.

use singular_periodic::certify::{build_certificate, recheck_boundaries, CertifyOptions, ExistenceCase};
use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

fn operator(beta: f64, q: f64, lambda: f64) -> singular_periodic::Result<ConeOperator> {
    let one = PeriodicCoefficient::constant(1.0, 1.0)?;
    let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, beta, q, 0.0)?);
    ConeOperator::new(&SystemSpec::new(1.0, vec![one.clone()], vec![one], f, lambda)?, 64)
}

fn main() -> singular_periodic::Result<()> {
    let runs = [
        (operator(0.0, 0.0, 1.0)?, 1.0),  // 1/x, sublinear
        (operator(1.0, 2.0, 0.1)?, 0.1),  // 1/x + x^2, superlinear
        (operator(1.0, 1.0, 0.1)?, 0.1),  // 1/x + x, neither
    ];
    for (op, lambda) in &runs {
        let case = ExistenceCase::detect(op).expect("singular nonlinearity");
        let cert = build_certificate(op, case, *lambda, &CertifyOptions::default())?;
        println!("case {} at lambda {lambda}: overall {}", case.as_str(), cert.overall);
        for chk in &cert.checks {
            println!("  {:<28} {:.6} vs {:.6}", chk.condition, chk.value, chk.threshold);
        }
        for t in recheck_boundaries(op, &cert, 50, 1)? {
            println!("  {:?} at r = {:.5}: worst ratio {:.4}, pass {}", t.kind, t.radius, t.worst_ratio, t.pass);
        }
    }

    // past the fold of 1/x + x^2 the certificate must fail, and says where
    let op = operator(1.0, 2.0, 1.0)?;
    let cert = build_certificate(&op, ExistenceCase::B, 1.0, &CertifyOptions::default())?;
    if let Some(chk) = cert.first_failure() {
        println!("lambda 1: fails at {} ({:.4} vs {:.4})", chk.condition, chk.value, chk.threshold);
    }
    println!("\n{}", cert.to_toml()?);
    Ok(())
}
