#![allow(dead_code)]

use rand::Rng;
use singular_periodic::cone::ConeOperator;
use singular_periodic::model::{validate_h1, Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

/// `x' = -x + lambda b f(x)` with `a = b = 1`, `omega = 1`.
pub fn unit_system(f: Nonlinearity, lambda: f64) -> SystemSpec {
    let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
    SystemSpec::new(1.0, vec![one.clone()], vec![one], f, lambda).unwrap()
}

pub fn inverse(lambda: f64) -> SystemSpec {
    unit_system(
        Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap()),
        lambda,
    )
}

/// `f = 1/x + x^2`
pub fn inverse_plus_square(lambda: f64) -> SystemSpec {
    unit_system(
        Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 1.0, 2.0, 0.0).unwrap()),
        lambda,
    )
}

pub fn operator(spec: &SystemSpec, m: usize) -> ConeOperator {
    ConeOperator::new(spec, m).unwrap()
}

/// A random system passing `validate_h1`/`validate_h2`: `n` in 1..=3, nonnegative
/// sinusoidal `a` and `b`, a power-sum `f`.
pub fn random_system<R: Rng>(rng: &mut R) -> SystemSpec {
    let n = rng.random_range(1..=3usize);
    let omega = rng.random_range(0.5..3.0);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for _ in 0..n {
        let mean = rng.random_range(0.2..2.0);
        a.push(
            PeriodicCoefficient::sinusoid(mean, rng.random_range(0.0..mean), rng.random_range(0.0..6.3), omega)
                .unwrap(),
        );
        let bm = rng.random_range(0.2..2.0);
        b.push(PeriodicCoefficient::sinusoid(bm, rng.random_range(0.0..bm), rng.random_range(0.0..6.3), omega).unwrap());
    }
    let mut draw = |lo: f64, hi: f64| (0..n).map(|_| rng.random_range(lo..hi)).collect::<Vec<f64>>();
    let alpha = draw(0.1, 2.0);
    let p = draw(0.1, 2.0);
    let beta = draw(0.0, 1.0);
    let q = draw(0.0, 2.5);
    let gamma = draw(0.0, 0.5);
    let f = Nonlinearity::power_sum(PowerSum::new(alpha, p, beta, q, gamma).unwrap());
    let lambda = rng.random_range(0.05..3.0);
    let spec = SystemSpec::new(omega, a, b, f, lambda).unwrap();
    assert!(validate_h1(&spec, 256).unwrap().is_ok());
    spec
}
