use crate::error::{Error, Result};
use crate::scalar::Real;

/// Environment variable that overrides [`EvalConfig::max_terms`].
pub const MAX_TERMS_ENV: &str = "HUMBERTQ_MAX_TERMS";

/// Tolerances and caps shared by all series, continued fractions and
/// quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig<T> {
    /// Relative truncation tolerance for series.
    pub rel_tol: T,
    /// Maximum number of series terms (or continued-fraction steps).
    pub max_terms: usize,
    /// Absolute tolerance for adaptive quadrature.
    pub quad_abs_tol: T,
    /// Cross-validate the two closed forms for μ₁ = μ₂ + n when both apply.
    pub paranoid: bool,
}

impl<T: Real> Default for EvalConfig<T> {
    fn default() -> Self {
        // 1e-13 for f64; single precision gets a proportionally looser bound.
        let eps = T::epsilon();
        let rel_tol = T::lit(1e-13).max(eps * T::lit(100.0));
        let quad_abs_tol = T::lit(1e-12).max(eps * T::lit(1000.0));
        Self {
            rel_tol,
            max_terms: 10_000,
            quad_abs_tol,
            paranoid: false,
        }
    }
}

impl<T: Real> EvalConfig<T> {
    /// Checks 0 < rel_tol < 1e-3, max_terms ≥ 64 and quad_abs_tol > 0.
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero() && self.rel_tol < T::lit(1e-3)) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1e-3), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 64 {
            return Err(Error::InvalidConfig(format!(
                "max_terms must be at least 64, got {}",
                self.max_terms
            )));
        }
        if !(self.quad_abs_tol > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "quad_abs_tol must be positive, got {}",
                self.quad_abs_tol
            )));
        }
        Ok(())
    }

    /// Defaults, with `max_terms` taken from `HUMBERTQ_MAX_TERMS` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(MAX_TERMS_ENV) {
            cfg.max_terms = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{MAX_TERMS_ENV}={raw:?} is not a count")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_quad_abs_tol(mut self, quad_abs_tol: T) -> Self {
        self.quad_abs_tol = quad_abs_tol;
        self
    }

    pub fn paranoid(mut self, on: bool) -> Self {
        self.paranoid = on;
        self
    }
}
