//! Laplace transforms of products of a generalized Marcum Q function, a
//! modified Bessel function and a power, with the special functions they
//! are built from and two κ-μ fading applications.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below name the double-precision instantiations.

mod config;
mod dw;
mod error;
pub mod fading;
pub mod hyp2var;
pub mod laplace;
pub mod marcum;
pub mod oracle;
pub mod quadrature;
mod scalar;
pub mod selftest;
mod series;
pub mod specfun;

pub use config::{EvalConfig, MAX_TERMS_ENV};
pub use error::{Error, Result};
pub use fading::{DetectionParams, InterferenceScenario, KappaMuParams, McEstimate};
pub use laplace::{in_dispatch, LaplaceParams, LaplaceValue, MethodPath};
pub use marcum::{marcum_p, marcum_q, SignedSquareArg};
pub use quadrature::QuadResult;
pub use scalar::{Real, SignedLog};

pub type EvalConfig64 = EvalConfig<f64>;
pub type EvalConfig32 = EvalConfig<f32>;
pub type LaplaceParams64 = LaplaceParams<f64>;
pub type LaplaceParams32 = LaplaceParams<f32>;
pub type KappaMuParams64 = KappaMuParams<f64>;
pub type KappaMuParams32 = KappaMuParams<f32>;
pub type InterferenceScenario64 = InterferenceScenario<f64>;
pub type DetectionParams64 = DetectionParams<f64>;
pub type SignedSquareArg64 = SignedSquareArg<f64>;
