use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::scalar::{Real, SignedLog};
use crate::series::StopRule;

use super::gamma::ln_gamma;

/// ln |I_ν(x)| and the sign of I_ν(x), from the power series
/// Σ_k (x/2)^{2k+ν} / (Γ(ν+k+1) k!).
///
/// The partial sum is periodically rescaled, so arguments far beyond the
/// overflow threshold of `I_ν` itself are fine.
pub fn ln_bessel_i<T: Real>(nu: T, x: T, cfg: &EvalConfig<T>) -> Result<SignedLog<T>> {
    if x.is_nan() || nu.is_nan() {
        return Err(Error::domain("bessel_i", "NaN argument"));
    }
    if x < T::zero() {
        return Err(Error::domain("bessel_i", format!("x must be >= 0, got {x}")));
    }
    // I_{-n} = I_n for integer n
    let nu = if nu < T::zero() && nu.is_integer() { -nu } else { nu };
    if x == T::zero() {
        if nu == T::zero() {
            return Ok(SignedLog::new(T::zero(), T::one()));
        }
        if nu > T::zero() {
            return Ok(SignedLog::zero());
        }
        return Err(Error::domain(
            "bessel_i",
            format!("negative non-integer order {nu} is singular at x = 0"),
        ));
    }

    let lead = ln_gamma(nu + T::one())?;
    let ln_first = nu * (x / T::lit(2.0)).ln() - lead.ln_abs;
    let quarter_sq = x * x / T::lit(4.0);

    let big = T::max_value().sqrt().sqrt();
    let ln_big = big.ln();
    let mut offset = T::zero();
    let mut term = T::one();
    let mut sum = T::one();
    let mut rule = StopRule::new(cfg.rel_tol);
    let mut k = 0usize;
    loop {
        k += 1;
        if k > cfg.max_terms {
            return Err(Error::NonConvergence {
                function: "bessel_i",
                terms: cfg.max_terms,
            });
        }
        let kf = T::from_count(k);
        term *= quarter_sq / (kf * (nu + kf));
        sum += term;
        if rule.update(term, sum) {
            break;
        }
        if sum.abs() > big {
            sum /= big;
            term /= big;
            offset += ln_big;
        }
    }
    if sum == T::zero() {
        return Ok(SignedLog::zero());
    }
    Ok(SignedLog::new(
        ln_first + offset + sum.abs().ln(),
        lead.sign * sum.signum(),
    ))
}

/// Modified Bessel function of the first kind I_ν(x) for real order and x ≥ 0.
pub fn bessel_i<T: Real>(nu: T, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(ln_bessel_i(nu, x, cfg)?.value())
}

/// e^{−x} I_ν(x).
pub fn bessel_i_scaled<T: Real>(nu: T, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(ln_bessel_i(nu, x, cfg)?.scale_ln(-x).value())
}
