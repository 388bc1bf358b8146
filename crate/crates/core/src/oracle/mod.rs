//! Independent numerical references: adaptive quadrature of the defining
//! integrals and a Monte-Carlo sampler of κ-μ powers.

mod montecarlo;
mod quad;

pub use montecarlo::{sample_kappa_mu, KappaMuSamples};
pub use quad::{quad_detection, quad_in, quad_kappa_mu_cdf, quad_marcum};
