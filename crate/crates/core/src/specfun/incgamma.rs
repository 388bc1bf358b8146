use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::gamma::ln_gamma;

/// Both regularized incomplete gamma ratios, each computed directly so that
/// neither loses accuracy to cancellation in `1 − other`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRatios<T> {
    /// P(a, x) = γ(a, x)/Γ(a)
    pub p: T,
    /// Q(a, x) = Γ(a, x)/Γ(a)
    pub q: T,
}

/// P and Q for a > 0, x ≥ 0: power series when x < a + 1, Lentz continued
/// fraction otherwise.
pub fn gamma_ratios<T: Real>(a: T, x: T, cfg: &EvalConfig<T>) -> Result<GammaRatios<T>> {
    if !(a > T::zero()) || !(x >= T::zero()) {
        return Err(Error::domain(
            "incomplete_gamma",
            format!("need a > 0 and x >= 0, got a = {a}, x = {x}"),
        ));
    }
    if x == T::zero() {
        return Ok(GammaRatios {
            p: T::zero(),
            q: T::one(),
        });
    }
    if x.is_infinite() {
        return Ok(GammaRatios {
            p: T::one(),
            q: T::zero(),
        });
    }
    let ln_pref = a * x.ln() - x - ln_gamma(a)?.ln_abs;
    if x < a + T::one() {
        let mut ap = a;
        let mut del = T::one() / a;
        let mut sum = del;
        for _ in 0..cfg.max_terms {
            ap += T::one();
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * cfg.rel_tol * T::lit(0.01) {
                let p = (sum.ln() + ln_pref).exp().min(T::one());
                return Ok(GammaRatios { p, q: T::one() - p });
            }
        }
    } else {
        let tiny = T::min_positive_value() / T::epsilon();
        let mut b = x + T::one() - a;
        let mut c = T::one() / tiny;
        let mut d = T::one() / b;
        let mut h = d;
        for i in 1..=cfg.max_terms {
            let fi = T::from_count(i);
            let an = -fi * (fi - a);
            b += T::lit(2.0);
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = T::one() / d;
            let del = d * c;
            h *= del;
            if (del - T::one()).abs() < cfg.rel_tol * T::lit(0.01) {
                let q = (h.ln() + ln_pref).exp().min(T::one());
                return Ok(GammaRatios { p: T::one() - q, q });
            }
        }
    }
    Err(Error::NonConvergence {
        function: "incomplete_gamma",
        terms: cfg.max_terms,
    })
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a).
pub fn upper_gamma_reg<T: Real>(a: T, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(gamma_ratios(a, x, cfg)?.q)
}

/// Regularized lower incomplete gamma P(a, x) = γ(a, x)/Γ(a).
pub fn lower_gamma_reg<T: Real>(a: T, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(gamma_ratios(a, x, cfg)?.p)
}

/// P(a, x) = x^a e^{−x} Σ_n x^n/Γ(a+n+1), which is entire in a, together
/// with its complement 1 − P.
///
/// For a > 0 this is [`gamma_ratios`]. At a = 0, −1, … it is exactly 1. For
/// other negative a the upward step P(a) = P(a+1) + x^a e^{−x}/Γ(a+1) lifts
/// the order into the positive range. Negative non-integer a needs x > 0.
pub fn gamma_ratios_continued<T: Real>(a: T, x: T, cfg: &EvalConfig<T>) -> Result<GammaRatios<T>> {
    if a > T::zero() {
        return gamma_ratios(a, x, cfg);
    }
    if a.is_integer() {
        return Ok(GammaRatios {
            p: T::one(),
            q: T::zero(),
        });
    }
    if !(x > T::zero()) {
        return Err(Error::domain(
            "incomplete_gamma",
            format!("continuation to a = {a} diverges at x = {x}"),
        ));
    }
    let steps = (-a).floor().to_usize().unwrap_or(0) + 1;
    let lifted = gamma_ratios(a + T::from_count(steps), x, cfg)?;
    let mut extra = T::zero();
    let ln_x = x.ln();
    for k in 0..steps {
        let order = a + T::from_count(k);
        let lg = ln_gamma(order + T::one())?;
        extra += lg.sign * (order * ln_x - x - lg.ln_abs).exp();
    }
    Ok(GammaRatios {
        p: lifted.p + extra,
        q: lifted.q - extra,
    })
}
