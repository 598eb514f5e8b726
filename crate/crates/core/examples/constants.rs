// Structural constants for `a = b = 1`, `omega = 1`, checked against their closed forms.

use std::f64::consts::E;

use singular_periodic::kernel::{compute_constants, PeriodicKernel};
use singular_periodic::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

fn main() -> singular_periodic::Result<()> {
    let one = PeriodicCoefficient::constant(1.0, 1.0)?;
    let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0)?);
    let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, 1.0)?;

    let c = compute_constants(&spec, 128)?;
    println!("sigma = {:.15}  (1/e       = {:.15})", c.sigma, 1.0 / E);
    println!("Gamma = {:.15}  (1/(e(e-1)) = {:.15})", c.gamma, 1.0 / (E * (E - 1.0)));
    println!("chi   = {:.15}  (e/(e-1)   = {:.15})", c.chi, E / (E - 1.0));

    // the kernel itself, at a few points of its domain t <= s <= t + omega
    let kernel = PeriodicKernel::new(&spec, 128)?;
    for s in [0.0, 0.25, 0.5, 1.0] {
        println!("G(0, {s}) = {:.12}", kernel.green(0, 0.0, s)?);
    }
    println!("bounds [{:.12}, {:.12}]", c.green_lower[0], c.green_upper[0]);
    Ok(())
}
