//! Scalar special functions: gamma family, modified Bessel I, ₀F₁, ₁F₁,
//! generalized Laguerre polynomials and incomplete gamma ratios.

pub(crate) mod bessel;
pub(crate) mod gamma;
pub(crate) mod hypergeom;
pub(crate) mod incgamma;
pub(crate) mod laguerre;

pub use bessel::{bessel_i, bessel_i_scaled, ln_bessel_i};
pub use gamma::{gamma, ln_gamma, pochhammer, recip_gamma};
pub use hypergeom::{hyp0f1, hyp1f1, hyp1f1_direct, hyp1f1_kummer};
pub use incgamma::{gamma_ratios, gamma_ratios_continued, lower_gamma_reg, upper_gamma_reg, GammaRatios};
pub use laguerre::laguerre;
