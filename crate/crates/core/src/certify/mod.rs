//! Sampled certificates for the existence cases, and the forcing-split feasibility check.
//!
//! Every result here is sampled evidence. Extrema of `f` come from finite searches, so a
//! passing certificate is labeled a "numerical certificate" rather than a proof.

mod certificate;
mod forcing;
mod radii;

pub use certificate::{
    build_certificate, recheck_boundaries, BoundaryKind, BoundaryTest, CertificateCheck, CertifyOptions,
    HypothesisCertificate, ExistenceCase, CERTIFICATE_LABEL,
};
pub use forcing::{e_split_feasibility, FeasibilityReport};
pub use radii::{
    epsilon_target, eta_target, find_inner_radius, find_outer_radius_sublinear, find_outer_radius_superlinear,
    small_lambda_bound, InnerRadius, SublinearRadius, SuperlinearThreshold, STRICTNESS_MARGIN,
};
