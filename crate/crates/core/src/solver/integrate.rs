//! Adaptive Dormand-Prince 5(4) integration.

use crate::error::{Error, Result};

const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [&[f64]; 6] = [
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
    &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// fifth-order weights minus the embedded fourth-order ones
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 1_000_000;

/// Integrates `y' = rhs(t, y)` from `t0` to `t1` with mixed tolerance `atol + rtol |y|`.
///
/// Fails if the step size underflows or the state becomes non-finite. With `positive_floor`
/// set, it also fails once the state leaves the open positive orthant or its sum norm drops
/// to the floor.
pub(crate) fn dopri5<F>(
    mut rhs: F,
    t0: f64,
    t1: f64,
    y0: &[f64],
    rtol: f64,
    atol: f64,
    positive_floor: Option<f64>,
) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    let span = t1 - t0;
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h = span * 1e-3;
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
    let mut stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    rhs(t, &y, &mut k[0]);
    for _ in 0..MAX_STEPS {
        if t >= t1 {
            return Ok(y);
        }
        if t + h > t1 {
            h = t1 - t;
        }
        if h < 1e-14 * span.abs().max(1.0) {
            return Err(Error::Integration {
                t,
                reason: format!("step size underflow (h = {h:e})"),
            });
        }
        for s in 0..6 {
            for d in 0..dim {
                stage[d] = y[d] + h * A[s].iter().enumerate().map(|(j, a)| a * k[j][d]).sum::<f64>();
            }
            rhs(t + C[s] * h, &stage, &mut k[s + 1]);
            if s == 5 {
                y_new.copy_from_slice(&stage);
            }
        }
        let mut err = 0.0;
        for d in 0..dim {
            let e: f64 = h * E.iter().enumerate().map(|(j, w)| w * k[j][d]).sum::<f64>();
            let sc = atol + rtol * y[d].abs().max(y_new[d].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / dim as f64).sqrt();
        if !err.is_finite() || y_new.iter().any(|x| !x.is_finite()) {
            h *= 0.2;
            continue;
        }
        if err <= 1.0 {
            t += h;
            y.copy_from_slice(&y_new);
            k.swap(0, 6);
            if let Some(floor) = positive_floor {
                let shell: f64 = y.iter().map(|x| x.abs()).sum();
                if shell <= floor || y.iter().any(|&x| x < 0.0) {
                    return Err(Error::Integration {
                        t,
                        reason: format!("state {y:?} reached the singularity guard (norm {shell:e})"),
                    });
                }
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    Err(Error::Integration {
        t,
        reason: format!("exceeded {MAX_STEPS} steps"),
    })
}
