use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::{annulus_stats, random_cone_element, ConeOperator};
use crate::error::{Error, Result};
use crate::model::Growth;

use super::radii::{
    eta_target, find_inner_radius, find_outer_radius_sublinear, find_outer_radius_superlinear, lambda_bound_from,
};

pub const CERTIFICATE_LABEL: &str = "numerical certificate";

/// Which existence case a certificate instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExistenceCase {
    /// singular at 0 and sublinear at infinity: a solution for every `lambda > 0`
    A,
    /// singular at 0 and superlinear at infinity: two solutions for small `lambda`
    B,
    /// singular at 0: a solution for small `lambda`
    C,
}

impl ExistenceCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ExistenceCase::A => "a",
            ExistenceCase::B => "b",
            ExistenceCase::C => "c",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Some(ExistenceCase::A),
            "b" => Some(ExistenceCase::B),
            "c" => Some(ExistenceCase::C),
            _ => None,
        }
    }

    /// The strongest case the nonlinearity's asymptotic class supports, if any.
    pub fn detect(op: &ConeOperator) -> Option<Self> {
        let profile = op.spec().f().asymptotic_class();
        if !profile.singular_at_zero {
            return None;
        }
        Some(match profile.growth {
            Growth::Sublinear => ExistenceCase::A,
            Growth::Superlinear => ExistenceCase::B,
            Growth::Indeterminate => ExistenceCase::C,
        })
    }

    fn admits(self, op: &ConeOperator) -> std::result::Result<(), String> {
        let profile = op.spec().f().asymptotic_class();
        if !profile.singular_at_zero {
            return Err("nonlinearity is not singular at 0".into());
        }
        match (self, profile.growth) {
            (ExistenceCase::A, Growth::Sublinear) | (ExistenceCase::B, Growth::Superlinear) | (ExistenceCase::C, _) => Ok(()),
            (_, g) => Err(format!("case {} needs a different growth class, nonlinearity is {g:?}", self.as_str())),
        }
    }
}

/// One numeric comparison `value (<|>) threshold`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateCheck {
    pub condition: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CertificateCheck {
    fn greater(condition: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            condition: condition.into(),
            value,
            threshold,
            pass: value > threshold,
        }
    }

    fn less(condition: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            condition: condition.into(),
            value,
            threshold,
            pass: value < threshold,
        }
    }

    fn at_most(condition: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            condition: condition.into(),
            value,
            threshold,
            pass: value <= threshold,
        }
    }

    fn missing(condition: impl Into<String>, threshold: f64) -> Self {
        Self {
            condition: condition.into(),
            value: f64::NAN,
            threshold,
            pass: false,
        }
    }
}

/// Radii and constants witnessing one existence case, with every comparison that was made.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCertificate {
    pub label: &'static str,
    pub case: ExistenceCase,
    pub lambda: f64,
    pub overall: bool,
    pub gamma: f64,
    pub chi: f64,
    pub sigma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    /// `eta` on the outer region `|u| >= H_hat` (case b)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_outer: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(rename = "H_hat", skip_serializing_if = "Option::is_none")]
    pub h_hat: Option<f64>,
    /// `M(r1)` (cases b and c)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<f64>,
    pub checks: Vec<CertificateCheck>,
}

impl HypothesisCertificate {
    fn new(op: &ConeOperator, case: ExistenceCase, lambda: f64) -> Self {
        let c = op.constants();
        Self {
            label: CERTIFICATE_LABEL,
            case,
            lambda,
            overall: false,
            gamma: c.gamma,
            chi: c.chi,
            sigma: c.sigma,
            r1: None,
            r2: None,
            r3: None,
            eta: None,
            eta_outer: None,
            epsilon: None,
            h_hat: None,
            m_r1: None,
            lambda0: None,
            checks: Vec::new(),
        }
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&CertificateCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Invalid(format!("certificate serialization: {e}")))
    }

    /// Radii on which the operator should expand (`||T u|| >= ||u||`) and compress.
    pub fn boundary_claims(&self) -> Vec<(f64, BoundaryKind)> {
        if !self.overall {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut push = |r: Option<f64>, kind| {
            if let Some(r) = r {
                out.push((r, kind));
            }
        };
        match self.case {
            ExistenceCase::A => {
                push(self.r1, BoundaryKind::Expanding);
                push(self.r2, BoundaryKind::Compressing);
            }
            ExistenceCase::B => {
                push(self.r2, BoundaryKind::Expanding);
                push(self.r1, BoundaryKind::Compressing);
                push(self.r3, BoundaryKind::Expanding);
            }
            ExistenceCase::C => {
                push(self.r2, BoundaryKind::Expanding);
                push(self.r1, BoundaryKind::Compressing);
            }
        }
        out
    }
}

/// Tuning for [`build_certificate`].
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Compressing radius for cases b and c.
    pub r1: f64,
    /// Evaluations per shell search (at least 1000).
    pub budget: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { r1: 1.0, budget: 1000 }
    }
}

/// Composes the radius searches into a certificate for `case` at `lambda`.
///
/// A search that fails yields a certificate with `overall = false` whose failing check
/// names the condition. A case that the nonlinearity's asymptotic class does not support
/// is a configuration error.
pub fn build_certificate(
    op: &ConeOperator,
    case: ExistenceCase,
    lambda: f64,
    options: &CertifyOptions,
) -> Result<HypothesisCertificate> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    if !(options.r1 > 0.0 && options.r1.is_finite()) {
        return Err(Error::Domain(format!("r1 must be positive, got {}", options.r1)));
    }
    case.admits(op).map_err(|m| Error::config("f", "case", m))?;
    let mut cert = HypothesisCertificate::new(op, case, lambda);
    let c = op.constants().clone();
    let budget = options.budget;
    let lg = lambda * c.gamma;

    match case {
        ExistenceCase::A => {
            match find_inner_radius(op, lambda, 1.0, budget)? {
                Some(inner) => {
                    cert.r1 = Some(inner.r);
                    cert.eta = Some(inner.eta);
                    cert.checks.push(CertificateCheck::greater("lambda*Gamma*eta > 1", lg * inner.eta, 1.0));
                    match find_outer_radius_sublinear(op, lambda, inner.r, budget)? {
                        Some(outer) => {
                            let base = (2.0 * inner.r).max(1.0 / c.sigma);
                            cert.r2 = Some(outer.r);
                            cert.epsilon = Some(outer.epsilon);
                            cert.checks.push(CertificateCheck::less(
                                "lambda*epsilon*chi < 1",
                                lambda * outer.epsilon * c.chi,
                                1.0,
                            ));
                            cert.checks
                                .push(CertificateCheck::greater("r2 > max(2 r1, 1/sigma)", outer.r, base));
                            for (i, fh) in outer.f_hat.iter().enumerate() {
                                cert.checks.push(CertificateCheck::at_most(
                                    format!("f_hat_{}(r2) <= epsilon*r2", i + 1),
                                    *fh,
                                    outer.epsilon * outer.r,
                                ));
                            }
                        }
                        None => cert.checks.push(CertificateCheck::missing("lambda*epsilon*chi < 1", 1.0)),
                    }
                }
                None => cert.checks.push(CertificateCheck::missing("lambda*Gamma*eta > 1", 1.0)),
            }
        }
        ExistenceCase::B | ExistenceCase::C => {
            let r1 = options.r1;
            cert.r1 = Some(r1);
            let stats = annulus_stats(r1, op.spec().f(), c.sigma, op.n(), budget)?;
            cert.m_r1 = Some(stats.max);
            cert.lambda0 = Some(lambda_bound_from(r1, c.chi, stats.max)?);
            cert.checks.push(CertificateCheck::less(
                "lambda*chi*M(r1) < r1",
                lambda * c.chi * stats.max,
                r1,
            ));
            // start one tenth-decade below r1 so that r2 < r1 strictly
            match find_inner_radius(op, lambda, r1 * 10f64.powf(-0.1), budget)? {
                Some(inner) => {
                    cert.r2 = Some(inner.r);
                    cert.eta = Some(inner.eta);
                    cert.checks.push(CertificateCheck::greater("lambda*Gamma*eta > 1", lg * inner.eta, 1.0));
                    cert.checks.push(CertificateCheck::less("r2 < r1", inner.r, r1));
                }
                None => cert.checks.push(CertificateCheck::missing("lambda*Gamma*eta > 1", 1.0)),
            }
            if case == ExistenceCase::B {
                match find_outer_radius_superlinear(op, lambda, budget)? {
                    Some(outer) => {
                        let r3 = (2.0 * r1).max(outer.h_hat / c.sigma);
                        cert.h_hat = Some(outer.h_hat);
                        cert.eta_outer = Some(outer.eta);
                        cert.r3 = Some(r3);
                        cert.checks.push(CertificateCheck::greater(
                            "lambda*Gamma*eta_outer > 1",
                            lg * outer.eta,
                            1.0,
                        ));
                        cert.checks.push(CertificateCheck::greater("r3 > r1", r3, r1));
                    }
                    None => cert
                        .checks
                        .push(CertificateCheck::missing("lambda*Gamma*eta_outer > 1", 1.0)),
                }
            }
        }
    }
    cert.overall = !cert.checks.is_empty() && cert.checks.iter().all(|c| c.pass);
    debug_assert!(cert.eta.is_none_or(|e| !cert.overall || e >= eta_target(op, lambda)));
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    /// `||T u|| >= ||u||`
    Expanding,
    /// `||T u|| <= ||u||`
    Compressing,
}

/// Direct test of one boundary claim on random cone elements of norm `radius`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryTest {
    pub radius: f64,
    pub kind: BoundaryKind,
    pub samples: usize,
    /// `||T u|| / ||u||` closest to violating the claim
    pub worst_ratio: f64,
    pub pass: bool,
}

/// Re-verifies a passing certificate's boundary inequalities on `samples` fresh random
/// elements of `K` per radius.
pub fn recheck_boundaries(
    op: &ConeOperator,
    cert: &HypothesisCertificate,
    samples: usize,
    seed: u64,
) -> Result<Vec<BoundaryTest>> {
    let op = op.with_lambda(cert.lambda)?;
    let c = op.constants();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (radius, kind) in cert.boundary_claims() {
        let mut worst = match kind {
            BoundaryKind::Expanding => f64::INFINITY,
            BoundaryKind::Compressing => 0.0,
        };
        for _ in 0..samples {
            let u = random_cone_element(&mut rng, &c.sigma_i, op.m(), op.omega(), radius)?;
            let ratio = op.apply(&u)?.norm() / u.norm();
            worst = match kind {
                BoundaryKind::Expanding => worst.min(ratio),
                BoundaryKind::Compressing => worst.max(ratio),
            };
        }
        let pass = match kind {
            BoundaryKind::Expanding => worst >= 1.0,
            BoundaryKind::Compressing => worst <= 1.0,
        };
        out.push(BoundaryTest {
            radius,
            kind,
            samples,
            worst_ratio: worst,
            pass,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

    fn op(alpha: f64, p: f64, beta: f64, q: f64, lambda: f64) -> ConeOperator {
        let one = PeriodicCoefficient::constant(1.0, 1.0).unwrap();
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, alpha, p, beta, q, 0.0).unwrap());
        let spec = SystemSpec::new(1.0, vec![one.clone()], vec![one], f, lambda).unwrap();
        ConeOperator::new(&spec, 64).unwrap()
    }

    #[test]
    fn case_a_for_inverse() {
        let op = op(1.0, 1.0, 0.0, 0.0, 1.0);
        assert_eq!(ExistenceCase::detect(&op), Some(ExistenceCase::A));
        let cert = build_certificate(&op, ExistenceCase::A, 1.0, &CertifyOptions::default()).unwrap();
        assert!(cert.overall, "{cert:?}");
        assert!((cert.r1.unwrap() - 0.398).abs() < 1e-3);
        assert!((cert.r2.unwrap() - std::f64::consts::E).abs() < 1e-8);
        assert!((cert.epsilon.unwrap() - (-1.0f64).exp()).abs() < 1e-8);
        let tests = recheck_boundaries(&op, &cert, 20, 7).unwrap();
        assert_eq!(tests.len(), 2);
        assert!(tests.iter().all(|t| t.pass), "{tests:?}");
        let text = cert.to_toml().unwrap();
        assert!(text.contains("label = \"numerical certificate\""));
        assert!(text.contains("case = \"a\""));
        assert!(text.contains("[[checks]]"));
    }

    #[test]
    fn case_b_small_and_large_lambda() {
        let op = op(1.0, 1.0, 1.0, 2.0, 0.1);
        assert_eq!(ExistenceCase::detect(&op), Some(ExistenceCase::B));
        let cert = build_certificate(&op, ExistenceCase::B, 0.1, &CertifyOptions::default()).unwrap();
        assert!(cert.overall, "{cert:?}");
        assert!(cert.r2.unwrap() < 1.0);
        let h = cert.h_hat.unwrap();
        assert!((h - 49.1).abs() < 0.1, "{h}");
        assert!((cert.r3.unwrap() - h * std::f64::consts::E).abs() < 1e-9 * h);
        let tests = recheck_boundaries(&op, &cert, 10, 1).unwrap();
        assert_eq!(tests.len(), 3);
        assert!(tests.iter().all(|t| t.pass), "{tests:?}");

        let big = build_certificate(&op, ExistenceCase::B, 10.0, &CertifyOptions::default()).unwrap();
        assert!(!big.overall);
        assert_eq!(big.first_failure().unwrap().condition, "lambda*chi*M(r1) < r1");
        assert!(recheck_boundaries(&op, &big, 5, 1).unwrap().is_empty());
    }

    #[test]
    fn class_mismatch_is_a_config_error() {
        let op = op(1.0, 1.0, 0.0, 0.0, 1.0);
        let err = build_certificate(&op, ExistenceCase::B, 1.0, &CertifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
        // case c only needs the singularity
        let c = build_certificate(&op, ExistenceCase::C, 0.1, &CertifyOptions::default()).unwrap();
        assert!(c.overall, "{c:?}");
        let smooth = self::op(1.0, 0.0, 1.0, 2.0, 1.0);
        assert!(ExistenceCase::detect(&smooth).is_none());
        assert!(build_certificate(&smooth, ExistenceCase::C, 1.0, &CertifyOptions::default()).is_err());
    }
}
