//! Generalized Marcum Q function of real order, for real and purely
//! imaginary arguments, and the identities that tie it to Φ₃.

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::hyp2var::{delta_coeff, phi3, Phi3Args};
use crate::scalar::{signed_powi, Real};
use crate::series::StopRule;
use crate::specfun::laguerre::LaguerreSeq;
use crate::specfun::{gamma, gamma_ratios_continued, ln_bessel_i, recip_gamma};

/// Term cap for the Laguerre series of the modified function; alternating
/// terms converge slowly when the signed squares are large.
const LAGUERRE_MIN_CAP: usize = 20_000;

/// A Marcum argument stored through its signed square.
///
/// `s ≥ 0` stands for the real argument √s, `s < 0` for the purely
/// imaginary argument i√(−s). All formulas in this crate only ever need the
/// square, so no complex arithmetic is involved.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SignedSquareArg<T> {
    pub s: T,
}

impl<T: Real> SignedSquareArg<T> {
    pub fn new(s: T) -> Self {
        Self { s }
    }

    /// The real argument x, stored as x².
    pub fn real(x: T) -> Self {
        Self { s: x * x }
    }

    /// The imaginary argument i·y, stored as −y².
    pub fn imaginary(y: T) -> Self {
        Self { s: -(y * y) }
    }

    pub fn is_imaginary(self) -> bool {
        self.s < T::zero()
    }

    pub fn is_zero(self) -> bool {
        self.s == T::zero()
    }
}

impl<T: Real> From<T> for SignedSquareArg<T> {
    fn from(s: T) -> Self {
        Self::new(s)
    }
}

/// The pair (1 − Q_M, Q_M), each accumulated from nonnegative-weight terms.
#[derive(Debug, Clone, Copy, PartialEq)]
struct MarcumPair<T> {
    p: T,
    q: T,
}

/// Σ_k Pois(k; λ) (P, Q)(M + k, x), summed outwards from the Poisson mode.
fn poisson_gamma_sums<T: Real>(m: T, lambda: T, x: T, cfg: &EvalConfig<T>) -> Result<MarcumPair<T>> {
    if lambda == T::zero() {
        let r = gamma_ratios_continued(m, x, cfg)?;
        return Ok(MarcumPair { p: r.p, q: r.q });
    }
    let ln_lambda = lambda.ln();
    let ln_weight = |k: usize| -> T {
        let kf = T::from_count(k);
        -lambda + kf * ln_lambda - crate::specfun::gamma::ln_factorial::<T>(k)
    };
    let k0 = lambda.floor().to_usize().unwrap_or(0);
    // Beyond this index the term ratio stays below 3/4, so the
    // two-small-terms rule is a genuine tail bound.
    let k_min = T::lit(2.0) * lambda + T::lit(2.0) * (lambda * x).sqrt() + T::lit(2.0) + (-m).max(T::zero());

    let mut sp = T::zero();
    let mut sq = T::zero();
    let mut rule_p = StopRule::new(cfg.rel_tol);
    let mut rule_q = StopRule::new(cfg.rel_tol);
    let mut k = k0;
    loop {
        if k - k0 > cfg.max_terms {
            return Err(Error::NonConvergence {
                function: "marcum_q",
                terms: cfg.max_terms,
            });
        }
        let w = ln_weight(k).exp();
        let r = gamma_ratios_continued(m + T::from_count(k), x, cfg)?;
        let (tp, tq) = (w * r.p, w * r.q);
        sp += tp;
        sq += tq;
        let done_p = rule_p.update(tp, sp);
        let done_q = rule_q.update(tq, sq);
        if done_p && done_q && T::from_count(k) >= k_min {
            break;
        }
        k += 1;
    }
    let negligible = cfg.rel_tol * T::lit(1e-3);
    for k in (0..k0).rev() {
        let w = ln_weight(k).exp();
        let order = m + T::from_count(k);
        // For positive orders both ratios lie in [0, 1], so w bounds the term.
        if order > T::zero() && w < negligible * sp.abs().min(sq.abs()) {
            break;
        }
        let r = gamma_ratios_continued(order, x, cfg)?;
        sp += w * r.p;
        sq += w * r.q;
    }
    Ok(MarcumPair { p: sp, q: sq })
}

/// (1 − Q_M, Q_M) for real arguments given by their squares a2, b2 ≥ 0.
fn marcum_real<T: Real>(m: T, a2: T, b2: T, cfg: &EvalConfig<T>) -> Result<MarcumPair<T>> {
    let two = T::lit(2.0);
    if m <= T::zero() && m.is_integer() {
        // Q_M(α, β) = 1 − Q_{1−M}(β, α)
        let r = poisson_gamma_sums(T::one() - m, b2 / two, a2 / two, cfg)?;
        return Ok(MarcumPair { p: r.q, q: r.p });
    }
    if b2 == T::zero() && m > T::zero() {
        return Ok(MarcumPair {
            p: T::zero(),
            q: T::one(),
        });
    }
    if b2 == T::zero() && m < T::zero() {
        return Err(Error::domain("marcum_q", format!("order {m} < 0 diverges at beta = 0")));
    }
    poisson_gamma_sums(m, a2 / two, b2 / two, cfg)
}

/// (b2/2)^M for a signed square; the phase of a negative base is dropped
/// for non-integer M.
fn signed_square_power<T: Real>(b2: T, m: T) -> T {
    let y = b2 / T::lit(2.0);
    if y >= T::zero() {
        return y.powf(m);
    }
    if m.is_integer() {
        signed_powi(y, m.to_i64().unwrap_or(0))
    } else {
        (-y).powf(m)
    }
}

/// The scaled complement C_M(a2, b2) = (1 − Q_M)/(b2/2)^M as the Laguerre
/// series e^{−a2/2} Σ_k (−1)^k L_k^{(M−1)}(a2/2) (b2/2)^k / Γ(M+k+1).
///
/// This is an entire, real function of M, a2 and b2 of any sign, which is
/// what makes the modified (imaginary-argument) function real.
pub fn marcum_scaled_laguerre<T: Real>(m: T, a2: T, b2: T, cfg: &EvalConfig<T>) -> Result<T> {
    let two = T::lit(2.0);
    let x = a2 / two;
    let y = b2 / two;
    let cap = cfg.max_terms.max(LAGUERRE_MIN_CAP);
    let warmup = y.abs() + x.abs() + (-m).max(T::zero());
    let mut lag = LaguerreSeq::new(m - T::one(), x);
    let mut u = T::zero();
    let mut sum = T::zero();
    let mut rule = StopRule::new(cfg.rel_tol);
    for k in 0..cap {
        let kf = T::from_count(k);
        let shift = m + kf + T::one();
        // u_k = (−y)^k / Γ(M + k + 1)
        u = if k == 0 || u == T::zero() || shift <= T::lit(0.5) {
            recip_gamma(shift) * signed_powi(-y, k as i64)
        } else {
            u * (-y) / (shift - T::one())
        };
        let l_k = if k == 0 { lag.current() } else { lag.advance() };
        let term = l_k * u;
        sum += term;
        if shift > T::zero() && rule.update(term, sum) && kf > warmup {
            return Ok((-x).exp() * sum);
        }
        if !sum.is_finite() {
            return Err(Error::domain("marcum_q", "Laguerre series overflowed"));
        }
    }
    Err(Error::NonConvergence {
        function: "marcum_q",
        terms: cap,
    })
}

/// C_M(a2, b2) = (1 − Q_M)/(b2/2)^M for signed squares of either sign.
///
/// Real arguments go through the Poisson/incomplete-gamma sums, anything
/// with a negative square through [`marcum_scaled_laguerre`]. At b2 = 0 the
/// value is e^{−a2/2}/Γ(M+1).
pub fn marcum_p_scaled<T: Real>(m: T, a2: T, b2: T, cfg: &EvalConfig<T>) -> Result<T> {
    if a2 >= T::zero() && b2 == T::zero() {
        return Ok((-a2 / T::lit(2.0)).exp() * recip_gamma(m + T::one()));
    }
    if a2 >= T::zero() && b2 > T::zero() {
        let r = marcum_real(m, a2, b2, cfg)?;
        return Ok(r.p / signed_square_power(b2, m));
    }
    marcum_scaled_laguerre(m, a2, b2, cfg)
}

fn marcum_pair<T: Real>(
    m: T,
    a2: SignedSquareArg<T>,
    b2: SignedSquareArg<T>,
    cfg: &EvalConfig<T>,
) -> Result<MarcumPair<T>> {
    if m.is_nan() || a2.s.is_nan() || b2.s.is_nan() {
        return Err(Error::domain("marcum_q", "NaN argument"));
    }
    if !a2.is_imaginary() && !b2.is_imaginary() {
        let r = marcum_real(m, a2.s, b2.s, cfg)?;
        if m <= T::zero() && !m.is_integer() {
            // the continuation to negative orders is not a probability
            return Ok(r);
        }
        // rounding in the weighted sums can leave either part an ulp past 1
        let unit = |v: T| v.max(T::zero()).min(T::one());
        return Ok(MarcumPair {
            p: unit(r.p),
            q: unit(r.q),
        });
    }
    let c = marcum_scaled_laguerre(m, a2.s, b2.s, cfg)?;
    let p = signed_square_power(b2.s, m) * c;
    Ok(MarcumPair { p, q: T::one() - p })
}

/// Generalized Marcum Q_M(α, β) of real order M.
///
/// * real α, β: Poisson-weighted incomplete-gamma series; integer M ≤ 0 by
///   the reflection Q_M(α, β) = 1 − Q_{1−M}(β, α); non-integer M ≤ 0 by
///   the analytic continuation of the regularized lower gamma in its order
///   (a domain error only at β = 0, where that continuation diverges).
/// * either argument imaginary: the Laguerre series, which is real. For
///   imaginary β and non-integer M the factor (β²/2)^M is taken as
///   |β²/2|^M.
pub fn marcum_q<T: Real>(m: T, a2: SignedSquareArg<T>, b2: SignedSquareArg<T>, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(marcum_pair(m, a2, b2, cfg)?.q)
}

/// 1 − Q_M(α, β), computed without cancellation when Q_M is close to 1.
pub fn marcum_p<T: Real>(m: T, a2: SignedSquareArg<T>, b2: SignedSquareArg<T>, cfg: &EvalConfig<T>) -> Result<T> {
    Ok(marcum_pair(m, a2, b2, cfg)?.p)
}

/// lim (β/α)^ν I_ν(αβ) as β → 0.
fn bessel_ratio_at_zero<T: Real>(nu: T, a2: T) -> Result<T> {
    if nu > T::zero() {
        return Ok(T::zero());
    }
    if nu == T::zero() {
        return Ok(T::one());
    }
    if nu.is_integer() {
        let m = (-nu).to_usize().unwrap_or(0);
        let half = a2 / T::lit(2.0);
        let mut v = T::one();
        for i in 1..=m {
            v *= half / T::from_count(i);
        }
        return Ok(v);
    }
    Err(Error::domain(
        "marcum_recurrence_rhs",
        format!("(beta/alpha)^nu I_nu diverges at beta = 0 for nu = {nu}"),
    ))
}

/// Right-hand side of the upward recurrence
/// Q_{M+n} = Q_M + (β/α)^M e^{−(α²+β²)/2} Σ_{k=0}^{n−1} (β/α)^k I_{M+k}(αβ),
/// real arguments only.
pub fn marcum_recurrence_rhs<T: Real>(
    m: T,
    n: usize,
    a2: SignedSquareArg<T>,
    b2: SignedSquareArg<T>,
    cfg: &EvalConfig<T>,
) -> Result<T> {
    if a2.is_imaginary() || b2.is_imaginary() {
        return Err(Error::domain("marcum_recurrence_rhs", "real arguments only"));
    }
    if a2.is_zero() {
        return Err(Error::DivisionByZero {
            function: "marcum_recurrence_rhs",
            what: "alpha",
        });
    }
    let (a2, b2) = (a2.s, b2.s);
    let q = marcum_q(m, SignedSquareArg::new(a2), SignedSquareArg::new(b2), cfg)?;
    let ln_damp = -(a2 + b2) / T::lit(2.0);
    let mut sum = T::zero();
    for k in 0..n {
        let nu = m + T::from_count(k);
        let term = if b2 == T::zero() {
            bessel_ratio_at_zero(nu, a2)? * ln_damp.exp()
        } else {
            let ln_ratio = (b2.ln() - a2.ln()) / T::lit(2.0);
            ln_bessel_i(nu, (a2 * b2).sqrt(), cfg)?
                .scale_ln(nu * ln_ratio + ln_damp)
                .value()
        };
        sum += term;
    }
    Ok(q + sum)
}

/// Q_M(α, β) = (α²/2)^{1−M} e^{−(α²+β²)/2} Φ₃(1; 2−M; α²/2, α²β²/4)/Γ(2−M).
///
/// The relation holds for integer orders only; for non-integer M the same
/// expression equals 1 − Q_{1−M}(β, α) instead, so such orders are
/// rejected.
pub fn marcum_phi3_m_lt_2<T: Real>(m: T, a2: T, b2: T, cfg: &EvalConfig<T>) -> Result<T> {
    if !(m < T::lit(2.0)) || !m.is_integer() {
        return Err(Error::domain(
            "marcum_phi3_m_lt_2",
            format!("needs an integer order M < 2, got {m}"),
        ));
    }
    if !(a2 > T::zero()) || !(b2 >= T::zero()) {
        return Err(Error::domain(
            "marcum_phi3_m_lt_2",
            format!("needs a2 > 0 and b2 >= 0, got a2 = {a2}, b2 = {b2}"),
        ));
    }
    let two = T::lit(2.0);
    let g = two - m;
    let f = phi3(
        Phi3Args {
            b: T::one(),
            g,
            w: a2 / two,
            z: a2 * b2 / T::lit(4.0),
        },
        cfg,
    )?;
    Ok((a2 / two).powf(T::one() - m) * (-(a2 + b2) / two).exp() * f / gamma(g)?)
}

/// 1 − Q_M(α, β) = (β²/2)^M e^{−(α²+β²)/2} Φ₃(1; M+1; β²/2, α²β²/4)/Γ(M+1), M > −1.
pub fn one_minus_q_lemma2<T: Real>(m: T, a2: T, b2: T, cfg: &EvalConfig<T>) -> Result<T> {
    if !(m > -T::one()) {
        return Err(Error::domain("one_minus_q_lemma2", format!("needs M > -1, got {m}")));
    }
    if !(a2 >= T::zero()) || !(b2 >= T::zero()) {
        return Err(Error::domain("one_minus_q_lemma2", "needs a2, b2 >= 0"));
    }
    let two = T::lit(2.0);
    if b2 == T::zero() {
        if m > T::zero() {
            return Ok(T::zero());
        }
        if m < T::zero() {
            return Err(Error::domain("one_minus_q_lemma2", "diverges at beta = 0 for M < 0"));
        }
    }
    let f = phi3(
        Phi3Args {
            b: T::one(),
            g: m + T::one(),
            w: b2 / two,
            z: a2 * b2 / T::lit(4.0),
        },
        cfg,
    )?;
    let power = if b2 == T::zero() { T::one() } else { (b2 / two).powf(m) };
    Ok(power * (-(a2 + b2) / two).exp() * f / gamma(m + T::one())?)
}

/// Φ₃(b; g; t, v) for b ∈ ℤ⁺, g > 0, t > 0, v ≥ 0 through Marcum functions:
/// Γ(g) e^{v/t+t} Σ_{j=0}^{2(b−1)} δ_j(b,g,t,v) t^{1−g+j} [1 − Q_{g−1−j}(√(2v/t), √(2t))].
///
/// Each t^{1−g+j}[1 − Q] is evaluated as the scaled complement
/// C_{g−1−j}(2v/t, 2t), which stays finite for the negative orders that
/// appear when j > g − 1.
pub fn phi3_via_marcum<T: Real>(b: usize, g: T, t: T, v: T, cfg: &EvalConfig<T>) -> Result<T> {
    if b == 0 || !(g > T::zero()) || !(t > T::zero()) || !(v >= T::zero()) {
        return Err(Error::domain(
            "phi3_via_marcum",
            format!("needs b >= 1, g > 0, t > 0, v >= 0; got b = {b}, g = {g}, t = {t}, v = {v}"),
        ));
    }
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for j in 0..=2 * (b - 1) {
        let delta = delta_coeff(j, b, g, t, v)?;
        if delta == T::zero() {
            continue;
        }
        let order = g - T::one() - T::from_count(j);
        sum += delta * marcum_p_scaled(order, two * v / t, two * t, cfg)?;
    }
    Ok(gamma(g)? * (v / t + t).exp() * sum)
}
