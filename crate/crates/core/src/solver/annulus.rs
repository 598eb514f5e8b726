use serde::Serialize;

use crate::cone::SINGULARITY_FLOOR;
use crate::error::{Error, Result};
use crate::kernel::GridFunction;

/// A search band `ra <= ||u|| <= rb` for the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Annulus {
    pub ra: f64,
    pub rb: f64,
}

impl Annulus {
    /// `ra` must clear the singularity guard by a factor of ten.
    pub fn new(ra: f64, rb: f64) -> Result<Self> {
        if !(ra >= 10.0 * SINGULARITY_FLOOR && rb > ra && rb.is_finite()) {
            return Err(Error::Domain(format!(
                "annulus [{ra}, {rb}] must satisfy {:e} <= ra < rb < inf",
                10.0 * SINGULARITY_FLOOR
            )));
        }
        Ok(Self { ra, rb })
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.ra && r <= self.rb
    }

    /// Rescales `u` radially onto the nearest boundary sphere when its norm leaves the band.
    /// Returns true if `u` was moved.
    pub fn project(&self, u: &mut GridFunction) -> bool {
        let r = u.norm();
        let target = if r < self.ra {
            self.ra
        } else if r > self.rb {
            self.rb
        } else {
            return false;
        };
        let mut s = target / r;
        // rounding can leave the rescaled norm an ulp outside the band
        for _ in 0..4 {
            let v: Vec<f64> = u.values().iter().map(|x| x * s).collect();
            let probe = GridFunction::new(u.n(), u.m(), u.omega(), v).expect("same shape");
            let rn = probe.norm();
            if self.contains(rn) {
                *u = probe;
                return true;
            }
            s *= if rn > self.rb { 1.0 - 4.0 * f64::EPSILON } else { 1.0 + 4.0 * f64::EPSILON };
        }
        u.values_mut().iter_mut().for_each(|x| *x *= s);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_rescales_to_nearest_sphere() {
        let band = Annulus::new(0.5, 2.0).unwrap();
        let mut u = GridFunction::constant(16, 1.0, &[3.0, 1.0]).unwrap();
        assert!(band.project(&mut u));
        assert!((u.norm() - 2.0).abs() < 1e-15);
        assert!((u.get(0, 0) / u.get(1, 0) - 3.0).abs() < 1e-14);
        let mut v = GridFunction::constant(16, 1.0, &[0.1]).unwrap();
        band.project(&mut v);
        assert!((v.norm() - 0.5).abs() < 1e-15);
        let mut w = GridFunction::constant(16, 1.0, &[1.0]).unwrap();
        assert!(!band.project(&mut w));
        assert!(Annulus::new(1e-9, 1.0).is_err());
        assert!(Annulus::new(2.0, 1.0).is_err());
    }
}
