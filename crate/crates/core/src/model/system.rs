use crate::error::{Error, Result};

use super::{Nonlinearity, PeriodicCoefficient};

/// A problem instance `x_i' = -a_i(t) x_i + lambda b_i(t) f_i(x) [+ lambda e_i(t)]`.
#[derive(Clone, Debug)]
pub struct SystemSpec {
    omega: f64,
    a: Vec<PeriodicCoefficient>,
    b: Vec<PeriodicCoefficient>,
    e: Option<Vec<PeriodicCoefficient>>,
    f: Nonlinearity,
    lambda: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("lambda must be positive, got {lambda}")))
    }
}

fn check_family(name: &str, coeffs: &[PeriodicCoefficient], n: usize, omega: f64) -> Result<()> {
    if coeffs.len() != n {
        return Err(Error::Invalid(format!(
            "expected {n} coefficients {name}_i, got {}",
            coeffs.len()
        )));
    }
    for (i, c) in coeffs.iter().enumerate() {
        if (c.period() - omega).abs() > 1e-12 * omega {
            return Err(Error::Invalid(format!(
                "{name}_{} has period {} but the system period is {omega}",
                i + 1,
                c.period()
            )));
        }
    }
    Ok(())
}

impl SystemSpec {
    pub fn new(
        omega: f64,
        a: Vec<PeriodicCoefficient>,
        b: Vec<PeriodicCoefficient>,
        f: Nonlinearity,
        lambda: f64,
    ) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Invalid(format!("omega must be positive, got {omega}")));
        }
        check_lambda(lambda)?;
        let n = a.len();
        if n == 0 {
            return Err(Error::Invalid("dimension n must be at least 1".into()));
        }
        check_family("a", &a, n, omega)?;
        check_family("b", &b, n, omega)?;
        if f.dimension() != n {
            return Err(Error::Invalid(format!(
                "nonlinearity has {} components but the system has {n}",
                f.dimension()
            )));
        }
        Ok(Self {
            omega,
            a,
            b,
            e: None,
            f,
            lambda,
        })
    }

    /// Attaches forcing terms `e_i`, which may take negative values.
    pub fn with_forcing(mut self, e: Vec<PeriodicCoefficient>) -> Result<Self> {
        check_family("e", &e, self.n(), self.omega)?;
        self.e = Some(e);
        Ok(self)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let mut s = self.clone();
        s.lambda = lambda;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn a(&self) -> &[PeriodicCoefficient] {
        &self.a
    }

    pub fn b(&self) -> &[PeriodicCoefficient] {
        &self.b
    }

    pub fn e(&self) -> Option<&[PeriodicCoefficient]> {
        self.e.as_deref()
    }

    pub fn f(&self) -> &Nonlinearity {
        &self.f
    }

    /// Right-hand side of the ODE at time `t` and state `x`.
    pub fn rhs(&self, t: f64, x: &[f64], forcing: bool, out: &mut [f64]) {
        for i in 0..self.n() {
            let mut v = -self.a[i].eval(t) * x[i] + self.lambda * self.b[i].eval(t) * self.f.eval(i, x);
            if forcing {
                if let Some(e) = &self.e {
                    v += self.lambda * e[i].eval(t);
                }
            }
            out[i] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PowerSum;

    fn unit(omega: f64) -> PeriodicCoefficient {
        PeriodicCoefficient::constant(1.0, omega).unwrap()
    }

    #[test]
    fn validates_shape() {
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        assert!(SystemSpec::new(1.0, vec![unit(1.0)], vec![unit(1.0)], f.clone(), 1.0).is_ok());
        assert!(SystemSpec::new(1.0, vec![unit(1.0)], vec![unit(1.0)], f.clone(), 0.0).is_err());
        assert!(SystemSpec::new(1.0, vec![unit(2.0)], vec![unit(1.0)], f.clone(), 1.0).is_err());
        assert!(SystemSpec::new(1.0, vec![], vec![], f, 1.0).is_err());
    }

    #[test]
    fn rhs_for_scalar_case() {
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap());
        let spec = SystemSpec::new(1.0, vec![unit(1.0)], vec![unit(1.0)], f, 0.25).unwrap();
        let mut out = [0.0];
        spec.rhs(0.3, &[0.5], false, &mut out);
        assert!(out[0].abs() < 1e-15);
    }
}
