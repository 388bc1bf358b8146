use crate::config::EvalConfig;
use crate::dw::Dw;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::StopRule;

/// Below this argument ₁F₁ is evaluated through Kummer's transformation.
const KUMMER_SWITCH: f64 = -30.0;

fn check_denominator<T: Real>(function: &'static str, q: T) -> Result<()> {
    if q.is_nonpositive_integer() {
        return Err(Error::Pole {
            function,
            at: q.as_f64(),
        });
    }
    Ok(())
}

/// ₀F₁(; q; z) = Σ_k z^k / ((q)_k k!).
///
/// Summed directly for every real z; for z > 0 it equals
/// Γ(q) z^{(1−q)/2} I_{q−1}(2√z).
pub fn hyp0f1<T: Real>(q: T, z: T, cfg: &EvalConfig<T>) -> Result<T> {
    check_denominator("hyp0f1", q)?;
    let mut term = T::one();
    let mut sum = T::one();
    let mut rule = StopRule::new(cfg.rel_tol);
    for k in 0..cfg.max_terms {
        let kf = T::from_count(k);
        term *= z / ((q + kf) * (kf + T::one()));
        sum += term;
        if rule.update(term, sum) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "hyp0f1",
        terms: cfg.max_terms,
    })
}

/// Kummer's series Σ_l (s)_l / ((q)_l l!) w^l, summed as written.
///
/// For w < 0 the terms alternate and can be far larger than the sum, so the
/// recursion and the accumulation run in double-word arithmetic.
pub fn hyp1f1_direct<T: Real>(s: T, q: T, w: T, cfg: &EvalConfig<T>) -> Result<T> {
    check_denominator("hyp1f1", q)?;
    if w < T::zero() {
        return hyp1f1_alternating(s, q, w, cfg);
    }
    let mut term = T::one();
    let mut sum = T::one();
    let mut rule = StopRule::new(cfg.rel_tol);
    for l in 0..cfg.max_terms {
        let lf = T::from_count(l);
        term *= (s + lf) * w / ((q + lf) * (lf + T::one()));
        sum += term;
        if rule.update(term, sum) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "hyp1f1",
        terms: cfg.max_terms,
    })
}

fn hyp1f1_alternating<T: Real>(s: T, q: T, w: T, cfg: &EvalConfig<T>) -> Result<T> {
    let (s, q, w) = (Dw::new(s), Dw::new(q), Dw::new(w));
    let one = Dw::new(T::one());
    let mut term = one;
    let mut sum = one;
    let mut lf = Dw::new(T::zero());
    let mut rule = StopRule::new(cfg.rel_tol);
    for _ in 0..cfg.max_terms {
        let num = s.add(lf).mul(w);
        let den = q.add(lf).mul(lf.add(one));
        term = term.mul(num).div(den);
        sum = sum.add(term);
        lf = lf.add(one);
        if rule.update(term.abs_hi(), sum.abs_hi()) {
            return Ok(sum.value());
        }
    }
    Err(Error::NonConvergence {
        function: "hyp1f1",
        terms: cfg.max_terms,
    })
}

/// ₁F₁ through Kummer's transformation e^w ₁F₁(q − s; q; −w).
pub fn hyp1f1_kummer<T: Real>(s: T, q: T, w: T, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(w.exp() * hyp1f1_direct(q - s, q, -w, cfg)?)
}

/// Confluent hypergeometric function ₁F₁(s; q; w).
pub fn hyp1f1<T: Real>(s: T, q: T, w: T, cfg: &EvalConfig<T>) -> Result<T> {
    if w < T::lit(KUMMER_SWITCH) {
        hyp1f1_kummer(s, q, w, cfg)
    } else {
        hyp1f1_direct(s, q, w, cfg)
    }
}
