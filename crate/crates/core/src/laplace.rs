//! Closed forms for
//! In(α, β, c, p, μ₁, μ₂) = ∫₀^∞ e^{−pt} t^{(μ₂−1)/2} Q_{μ₁}(α√t, β) I_{μ₂−1}(c√t) dt
//! when μ₁ − μ₂ is an integer.

use std::fmt;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::hyp2var::delta_coeff;
use crate::marcum::{marcum_p_scaled, marcum_q, SignedSquareArg};
use crate::quadrature::{integrate, PanelRule, QuadOptions};
use crate::scalar::{signed_powi, Real, SignedLog};
use crate::specfun::{gamma, hyp0f1, ln_bessel_i, ln_gamma};

/// Tolerance for recognising μ₁ − μ₂ as an integer.
pub const OFFSET_TOLERANCE: f64 = 1e-9;

/// Relative disagreement above which the paranoid cross-check fails.
pub const PARANOID_REL_TOL: f64 = 1e-8;

/// Parameters (α², β², c, p, μ₁, μ₂) of the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceParams<T> {
    pub a2: SignedSquareArg<T>,
    pub b2: SignedSquareArg<T>,
    pub c: T,
    pub p: T,
    pub mu1: T,
    pub mu2: T,
}

impl<T: Real> LaplaceParams<T> {
    /// Builds and validates the parameter set (p > 0, p̃ = 2p + α² > 0, c ≥ 0).
    pub fn new(a2: T, b2: T, c: T, p: T, mu1: T, mu2: T) -> Result<Self> {
        let params = Self {
            a2: SignedSquareArg::new(a2),
            b2: SignedSquareArg::new(b2),
            c,
            p,
            mu1,
            mu2,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a2.s, self.b2.s, self.c, self.p, self.mu1, self.mu2]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::domain("laplace", "parameters must be finite"));
        }
        if !(self.p > T::zero()) {
            return Err(Error::domain("laplace", format!("p must be > 0, got {}", self.p)));
        }
        if !(self.p_tilde() > T::zero()) {
            return Err(Error::domain(
                "laplace",
                format!("p~ = 2p + a2 must be > 0, got {}", self.p_tilde()),
            ));
        }
        if self.c < T::zero() {
            return Err(Error::domain("laplace", format!("c must be >= 0, got {}", self.c)));
        }
        Ok(())
    }

    /// p̃ = 2p + α².
    pub fn p_tilde(&self) -> T {
        T::lit(2.0) * self.p + self.a2.s
    }

    /// The integer offset n = μ₁ − μ₂, or an error if it is not an integer.
    pub fn offset(&self) -> Result<i64> {
        let d = self.mu1 - self.mu2;
        let r = d.round();
        if (d - r).abs() > T::lit(OFFSET_TOLERANCE) {
            return Err(Error::NonIntegerOffset { offset: d.as_f64() });
        }
        Ok(r.to_i64().unwrap_or(0))
    }

    fn with_orders(&self, mu1: T, mu2: T) -> Self {
        Self { mu1, mu2, ..*self }
    }
}

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodPath {
    /// μ₁ = μ₂.
    EqualOrders,
    /// μ₁ = μ₂ + n through modified Marcum functions.
    Marcum,
    /// μ₁ = μ₂ + n through proper integrals on [0, 1].
    ProperIntegral,
    /// μ₁ = μ₂ − m through a finite Bessel sum.
    BesselSum,
    /// α = 0: the Marcum factor is constant in t.
    AlphaZero,
    /// Numerical quadrature.
    QuadratureFallback,
}

impl MethodPath {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodPath::EqualOrders => "equal-orders",
            MethodPath::Marcum => "marcum",
            MethodPath::ProperIntegral => "proper-integral",
            MethodPath::BesselSum => "bessel-sum",
            MethodPath::AlphaZero => "alpha-zero",
            MethodPath::QuadratureFallback => "quadrature-fallback",
        }
    }
}

impl fmt::Display for MethodPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A transform value with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceValue<T> {
    pub value: T,
    pub path: MethodPath,
}

/// (c/2)^{μ−1} p^{−μ} e^{c²/4p} = ∫₀^∞ e^{−pt} t^{(μ−1)/2} I_{μ−1}(c√t) dt.
pub fn laplace_bessel_power<T: Real>(mu: T, c: T, p: T) -> Result<T> {
    if !(mu > T::zero()) || !(p > T::zero()) || c < T::zero() {
        return Err(Error::domain(
            "laplace_bessel_power",
            format!("needs mu > 0, p > 0, c >= 0; got mu = {mu}, c = {c}, p = {p}"),
        ));
    }
    let two = T::lit(2.0);
    Ok((c / two).powf(mu - T::one()) * p.powf(-mu) * (c * c / (T::lit(4.0) * p)).exp())
}

/// μ₁ = μ₂ = μ:
/// (1/p)(c/2p)^{μ−1} e^{c²/4p} Q_μ(αc/√(2p p̃), β√(2p/p̃)), with the Marcum
/// arguments passed as signed squares.
pub fn in_equal_orders<T: Real>(params: &LaplaceParams<T>, cfg: &EvalConfig<T>) -> Result<T> {
    params.validate()?;
    let LaplaceParams { a2, b2, c, p, mu1, .. } = *params;
    let two = T::lit(2.0);
    let pt = params.p_tilde();
    let qa = SignedSquareArg::new(a2.s * c * c / (two * p * pt));
    let qb = SignedSquareArg::new(b2.s * two * p / pt);
    let q = marcum_q(mu1, qa, qb, cfg)?;
    if c == T::zero() {
        return Ok(T::zero().powf(mu1 - T::one()) / p * q);
    }
    let ln_pref = -p.ln() + (mu1 - T::one()) * (c / (two * p)).ln() + c * c / (T::lit(4.0) * p);
    Ok(ln_pref.exp() * q)
}

/// μ₁ = μ₂ + n, n ≥ 1, μ₂ > −1, through modified Marcum functions.
///
/// With W = α²β²/(2p̃) and Z = c²/(2p̃) the correction term is
/// 2 c^{μ₂−1} e^{−β²/2} (β²/2p̃)^{μ₂} Σ_{k=0}^{n−1} (β²/2)^k
/// Σ_{j=0}^{2k} δ_j(k+1, μ₂+k+1, −W, WZ) C_{μ₂+k−j}(−2Z, −2W),
/// where C_M(x, y) = (1 − Q_M)/(y/2)^M is the scaled Marcum complement.
pub fn in_plus_n_marcum<T: Real>(params: &LaplaceParams<T>, cfg: &EvalConfig<T>) -> Result<T> {
    params.validate()?;
    let n = params.offset()?;
    if n < 1 {
        return Err(Error::domain(
            "in_plus_n_marcum",
            format!("needs mu1 - mu2 >= 1, got {n}"),
        ));
    }
    let mu2 = params.mu2;
    if !(mu2 > -T::one()) {
        return Err(Error::domain("in_plus_n_marcum", format!("needs mu2 > -1, got {mu2}")));
    }
    let base = in_equal_orders(&params.with_orders(mu2, mu2), cfg)?;
    let (a2, b2, c) = (params.a2.s, params.b2.s, params.c);
    if b2 == T::zero() {
        return Ok(base);
    }
    if b2 < T::zero() && !mu2.is_integer() {
        return Err(Error::domain(
            "in_plus_n_marcum",
            "imaginary beta needs an integer mu2 (the closed form would be complex)",
        ));
    }
    let two = T::lit(2.0);
    let pt = params.p_tilde();
    let w = a2 * b2 / (two * pt);
    let z = c * c / (two * pt);
    let half_b2 = b2 / two;
    let mut outer = T::zero();
    let mut half_b2_pow = T::one();
    for k in 0..n as usize {
        if k > 0 {
            half_b2_pow *= half_b2;
        }
        let g = mu2 + T::from_count(k) + T::one();
        let mut inner = T::zero();
        for j in 0..=2 * k {
            let delta = delta_coeff(j, k + 1, g, -w, w * z)?;
            if delta == T::zero() {
                continue;
            }
            let order = mu2 + T::from_count(k) - T::from_count(j);
            inner += delta * marcum_p_scaled(order, -two * z, -two * w, cfg)?;
        }
        outer += half_b2_pow * inner;
    }
    let ratio = b2 / (two * pt);
    let ratio_pow = if mu2.is_integer() {
        signed_powi(ratio, mu2.to_i64().unwrap_or(0))
    } else {
        ratio.powf(mu2)
    };
    let c_pow = if c == T::zero() {
        c.powf(mu2 - T::one())
    } else {
        ((mu2 - T::one()) * c.ln()).exp()
    };
    Ok(base + two * c_pow * (-half_b2).exp() * ratio_pow * outer)
}

/// ∫₀¹ t^{μ−1} g(t) dt, with u = t^μ removing the endpoint singularity for μ < 1.
fn singular_weight_integral<T: Real, F: FnMut(T) -> Result<T>>(mu: T, mut g: F, cfg: &EvalConfig<T>) -> Result<T> {
    let opts = QuadOptions::new(cfg.quad_abs_tol, cfg.rel_tol * T::lit(10.0))
        .with_rule(PanelRule::GaussLegendre10)
        .with_initial_panels(4);
    if mu < T::one() {
        let inv = T::one() / mu;
        let r = integrate(|u: T| g(u.powf(inv)), T::zero(), T::one(), &opts)?;
        Ok(r.value / mu)
    } else {
        let r = integrate(|t: T| Ok(t.powf(mu - T::one()) * g(t)?), T::zero(), T::one(), &opts)?;
        Ok(r.value)
    }
}

/// μ₁ = μ₂ + n, n ≥ 1, μ₂ > 0, through proper integrals:
/// In(μ₂,μ₂) + (2/p̃)(β²c/2p̃)^{μ₂−1} e^{−β²/2 + c²/2p̃}/Γ(μ₂)
/// · Σ_{j=1}^{n} (β²/2)^j/(j−1)! ∫₀¹ t^{μ₂−1}(1−t)^{j−1} e^{(α²β²/2p̃)t} ₀F₁(;μ₂; α²β²c²t/4p̃²) dt.
pub fn in_plus_n_quadrature<T: Real>(params: &LaplaceParams<T>, cfg: &EvalConfig<T>) -> Result<T> {
    params.validate()?;
    let n = params.offset()?;
    if n < 1 {
        return Err(Error::domain(
            "in_plus_n_quadrature",
            format!("needs mu1 - mu2 >= 1, got {n}"),
        ));
    }
    let mu2 = params.mu2;
    if !(mu2 > T::zero()) {
        return Err(Error::domain(
            "in_plus_n_quadrature",
            format!("needs mu2 > 0, got {mu2}"),
        ));
    }
    let (a2, b2, c) = (params.a2.s, params.b2.s, params.c);
    if a2 < T::zero() || b2 < T::zero() {
        return Err(Error::domain("in_plus_n_quadrature", "real arguments only"));
    }
    let base = in_equal_orders(&params.with_orders(mu2, mu2), cfg)?;
    if b2 == T::zero() {
        return Ok(base);
    }
    let two = T::lit(2.0);
    let pt = params.p_tilde();
    let lin = a2 * b2 / (two * pt);
    let hyp_arg = a2 * b2 * c * c / (T::lit(4.0) * pt * pt);
    let half_b2 = b2 / two;
    let mut sum = T::zero();
    let mut coef = T::one();
    for j in 1..=n as usize {
        coef *= half_b2;
        if j > 1 {
            coef /= T::from_count(j - 1);
        }
        let jm1 = (j - 1) as i32;
        let integral = singular_weight_integral(
            mu2,
            |t: T| Ok((T::one() - t).powi(jm1) * (lin * t).exp() * hyp0f1(mu2, hyp_arg * t, cfg)?),
            cfg,
        )?;
        sum += coef * integral;
    }
    // (2/p̃)(β²c/2p̃)^{μ₂−1}/Γ(μ₂) with c = 0 handled by powf
    let scale = b2 * c / (two * pt);
    let pref = two / pt * scale.powf(mu2 - T::one()) * (-half_b2 + c * c / (two * pt)).exp() / gamma(mu2)?;
    Ok(base + pref * sum)
}

/// β^ν α^{−μ₁} I_ν(Kβ), with its limit at β = 0.
fn scaled_bessel_term<T: Real>(
    nu: T,
    mu1: T,
    alpha: T,
    beta: T,
    k_arg: T,
    cfg: &EvalConfig<T>,
) -> Result<SignedLog<T>> {
    let ln_alpha = alpha.ln();
    if beta == T::zero() {
        if nu > T::zero() {
            return Ok(SignedLog::zero());
        }
        if nu == T::zero() {
            return Ok(SignedLog::new(-mu1 * ln_alpha, T::one()));
        }
        if nu.is_integer() {
            let m = (-nu).to_usize().unwrap_or(0);
            let ln_v = T::from_count(m) * (k_arg / T::lit(2.0)).ln() - ln_gamma(T::from_count(m + 1))?.ln_abs;
            return Ok(SignedLog::new(ln_v - mu1 * ln_alpha, T::one()));
        }
        return Err(Error::domain("in_minus_n", format!("order {nu} diverges at beta = 0")));
    }
    let lb = ln_bessel_i(nu, k_arg * beta, cfg)?;
    Ok(lb.scale_ln(nu * beta.ln() - mu1 * ln_alpha))
}

/// μ₁ = μ₂ − m, m ≥ 1, real α > 0:
/// In(μ₂,μ₂) − (2/c)(c/p̃)^m (β/α)^{μ₁} e^{(c²/2 − pβ²)/p̃}
/// · Σ_{k=0}^{m−1} Σ_{j=0}^{m−k−1} (β/c)^{j+k} (p̃/α)^k (−α)^j (−m+k+1)_j/j! I_{μ₁+k+j}(cαβ/p̃).
pub fn in_minus_n<T: Real>(params: &LaplaceParams<T>, cfg: &EvalConfig<T>) -> Result<T> {
    params.validate()?;
    let n = params.offset()?;
    if n > -1 {
        return Err(Error::domain("in_minus_n", format!("needs mu1 - mu2 <= -1, got {n}")));
    }
    let m = (-n) as usize;
    let (a2, b2, c, p) = (params.a2.s, params.b2.s, params.c, params.p);
    if a2 < T::zero() || b2 < T::zero() {
        return Err(Error::domain("in_minus_n", "real arguments only"));
    }
    if a2 == T::zero() {
        return Err(Error::DivisionByZero {
            function: "in_minus_n",
            what: "alpha",
        });
    }
    if !(c > T::zero()) {
        return Err(Error::DivisionByZero {
            function: "in_minus_n",
            what: "c",
        });
    }
    let mu1 = params.mu1;
    let base = in_equal_orders(&params.with_orders(params.mu2, params.mu2), cfg)?;
    let (alpha, beta) = (a2.sqrt(), b2.sqrt());
    let pt = params.p_tilde();
    let k_arg = c * alpha / pt;
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for k in 0..m {
        let mut poch = T::one();
        let mut j_fact = T::one();
        for j in 0..(m - k) {
            if j > 0 {
                poch *= -T::from_count(m) + T::from_count(k) + T::one() + T::from_count(j - 1);
                j_fact *= T::from_count(j);
            }
            if poch == T::zero() {
                break;
            }
            let nu = mu1 + T::from_count(k + j);
            // β^{μ₁+j+k} α^{−μ₁} I_ν times c^{−(j+k)} p̃^k α^{j−k} (−1)^j
            let bessel = scaled_bessel_term(nu, mu1, alpha, beta, k_arg, cfg)?;
            if bessel.sign == T::zero() {
                continue;
            }
            let ln_rest = -T::from_count(j + k) * c.ln()
                + T::from_count(k) * pt.ln()
                + (T::from_count(j) - T::from_count(k)) * alpha.ln();
            let sign = if j % 2 == 0 { T::one() } else { -T::one() };
            sum += sign * poch / j_fact * bessel.scale_ln(ln_rest).value();
        }
    }
    let ln_pref = two.ln() - c.ln() + T::from_count(m) * (c / pt).ln() + (c * c / two - p * b2) / pt;
    Ok(base - ln_pref.exp() * sum)
}

/// Routes to the closed form that applies to μ₁ − μ₂.
///
/// For μ₁ ≠ μ₂, α = 0 is reduced exactly: the Marcum factor Q_{μ₁}(0, β) leaves the
/// integral and the rest is [`laplace_bessel_power`]. In paranoid mode the
/// two n ≥ 1 routes are compared when both apply.
pub fn in_dispatch<T: Real>(params: &LaplaceParams<T>, cfg: &EvalConfig<T>) -> Result<LaplaceValue<T>> {
    params.validate()?;
    let n = params.offset()?;
    if n == 0 {
        return Ok(LaplaceValue {
            value: in_equal_orders(params, cfg)?,
            path: MethodPath::EqualOrders,
        });
    }
    if params.a2.is_zero() && params.mu2 > T::zero() {
        let q = marcum_q(params.mu1, params.a2, params.b2, cfg)?;
        let value = q * laplace_bessel_power(params.mu2, params.c, params.p)?;
        return Ok(LaplaceValue {
            value,
            path: MethodPath::AlphaZero,
        });
    }
    if n < 0 {
        return Ok(LaplaceValue {
            value: in_minus_n(params, cfg)?,
            path: MethodPath::BesselSum,
        });
    }
    let value = in_plus_n_marcum(params, cfg)?;
    if cfg.paranoid && params.mu2 > T::zero() && params.a2.s >= T::zero() && params.b2.s >= T::zero() {
        let check = in_plus_n_quadrature(params, cfg)?;
        let dev = ((value - check) / check).abs();
        if dev > T::lit(PARANOID_REL_TOL) {
            return Err(Error::domain(
                "in_dispatch",
                format!("closed forms disagree: marcum {value} vs proper-integral {check} (rel {dev:e})"),
            ));
        }
    }
    Ok(LaplaceValue {
        value,
        path: MethodPath::Marcum,
    })
}

/// L{Q_{μ₁}(α, β√t) t^{(μ₂−1)/2} I_{μ₂−1}(c√t)} for integer μ₁, μ₂:
/// the reflection Q_{μ₁}(α, β√t) = 1 − Q_{1−μ₁}(β√t, α) turns it into
/// laplace_bessel_power(μ₂, c, p) − In(β, α, c, p, 1−μ₁, μ₂).
pub fn in_swapped_corollary3<T: Real>(a2: T, b2: T, c: T, p: T, mu1: i64, mu2: i64, cfg: &EvalConfig<T>) -> Result<T> {
    let swapped = LaplaceParams::new(b2, a2, c, p, T::from_int(1 - mu1), T::from_int(mu2))?;
    let whole = laplace_bessel_power(T::from_int(mu2), c, p)?;
    Ok(whole - in_dispatch(&swapped, cfg)?.value)
}
