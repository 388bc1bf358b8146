use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::fading::{kappa_mu_pdf, KappaMuParams};
use crate::laplace::LaplaceParams;
use crate::marcum::{marcum_q, SignedSquareArg};
use crate::quadrature::{integrate, QuadOptions, QuadResult};
use crate::scalar::Real;
use crate::specfun::{ln_bessel_i, ln_gamma};

/// ln(1e-18): the envelope has to fall this far below its peak.
const LN_TAIL: f64 = -41.446_531_673_892_82;

fn options<T: Real>(cfg: &EvalConfig<T>) -> QuadOptions<T> {
    QuadOptions::new(cfg.quad_abs_tol * T::lit(1e-6), cfg.quad_abs_tol).with_initial_panels(16)
}

/// Smallest U on a grid of step 1/√(2p) past the peak of
/// e^{−pt² + ct} t^k at which the envelope is below 1e-18 of the peak.
fn tail_limit<T: Real>(p: T, c: T, k: T) -> T {
    let two = T::lit(2.0);
    let ln_env = |t: T| -p * t * t + c * t + k * t.ln();
    let h = T::one() / (two * p).sqrt();
    let peak = ((c + (c * c + T::lit(8.0) * p * k.max(T::zero())).sqrt()) / (T::lit(4.0) * p)).max(h);
    let target = ln_env(peak) + T::lit(LN_TAIL);
    let mut u = peak + h;
    while ln_env(u) > target {
        u += h;
    }
    u
}

/// ∫₀^upper f where f(t) ~ t^lead at the origin. For lead < 0 the
/// substitution t = s^{1/(lead+1)} removes the singularity.
fn from_zero<T: Real, F: FnMut(T) -> Result<T>>(
    mut f: F,
    upper: T,
    lead: T,
    opts: &QuadOptions<T>,
) -> Result<QuadResult<T>> {
    if lead >= T::zero() {
        return integrate(f, T::zero(), upper, opts);
    }
    let k = T::one() / (lead + T::one());
    let s_max = upper.powf(T::one() / k);
    integrate(
        move |s: T| {
            let t = s.powf(k);
            Ok(f(t)? * k * s.powf(k - T::one()))
        },
        T::zero(),
        s_max,
        opts,
    )
}

/// Numerical In: 2∫₀^∞ e^{−pt²} t^{μ₂} Q_{μ₁}(αt, β) I_{μ₂−1}(ct) dt.
///
/// Real α and β only. The Marcum factor comes from [`marcum_q`].
pub fn quad_in<T: Real>(params: &LaplaceParams<T>, cfg: &EvalConfig<T>) -> Result<QuadResult<T>> {
    params.validate()?;
    let (a2, b2, c, p, mu1, mu2) = (params.a2.s, params.b2.s, params.c, params.p, params.mu1, params.mu2);
    if a2 < T::zero() || b2 < T::zero() {
        return Err(Error::domain("quad_in", "real arguments only (a2, b2 >= 0)"));
    }
    if !(mu2 > T::zero()) {
        return Err(Error::domain(
            "quad_in",
            format!("integral diverges at 0 for mu2 = {mu2}"),
        ));
    }
    let nu = mu2 - T::one();
    let two = T::lit(2.0);
    let integrand = |t: T| -> Result<T> {
        if t == T::zero() {
            return Ok(T::zero());
        }
        let lb = ln_bessel_i(nu, c * t, cfg)?;
        if lb.sign == T::zero() {
            return Ok(T::zero());
        }
        let q = marcum_q(mu1, SignedSquareArg::new(a2 * t * t), SignedSquareArg::new(b2), cfg)?;
        Ok(two * q * lb.sign * (-p * t * t + mu2 * t.ln() + lb.ln_abs).exp())
    };
    let upper = tail_limit(p, c, mu2);
    let lead = if c > T::zero() { two * mu2 - T::one() } else { mu2 };
    from_zero(integrand, upper, lead, &options(cfg))
}

/// Numerical Q_M(α, β) = ∫_β^∞ x (x/α)^{M−1} e^{−(x²+α²)/2} I_{M−1}(αx) dx.
pub fn quad_marcum<T: Real>(m: T, a2: T, b2: T, cfg: &EvalConfig<T>) -> Result<QuadResult<T>> {
    if !(m > T::zero()) || !(a2 >= T::zero()) || !(b2 >= T::zero()) {
        return Err(Error::domain(
            "quad_marcum",
            format!("need M > 0 and real arguments, got M = {m}, a2 = {a2}, b2 = {b2}"),
        ));
    }
    let two = T::lit(2.0);
    let alpha = a2.sqrt();
    let beta = b2.sqrt();
    let ln_alpha_zero = -(m - T::one()) * two.ln() - ln_gamma(m)?.ln_abs;
    let integrand = |x: T| -> Result<T> {
        if x == T::zero() {
            return Ok(T::zero());
        }
        if alpha == T::zero() {
            return Ok(((two * m - T::one()) * x.ln() - x * x / two + ln_alpha_zero).exp());
        }
        let lb = ln_bessel_i(m - T::one(), alpha * x, cfg)?;
        let ln_v = m * x.ln() - (m - T::one()) * alpha.ln() - (x * x + a2) / two + lb.ln_abs;
        Ok(lb.sign * ln_v.exp())
    };
    let upper = beta.max(alpha + (two * m).sqrt()) + T::lit(16.0);
    let opts = options(cfg);
    if beta == T::zero() {
        from_zero(integrand, upper, two * m - T::one(), &opts)
    } else {
        integrate(integrand, beta, upper, &opts)
    }
}

/// ∫₀^z of the κ-μ density, in the variable t = √x.
pub fn quad_kappa_mu_cdf<T: Real>(params: &KappaMuParams<T>, z: T, cfg: &EvalConfig<T>) -> Result<QuadResult<T>> {
    params.validate()?;
    if !(z >= T::zero()) {
        return Err(Error::domain("quad_kappa_mu_cdf", format!("z must be >= 0, got {z}")));
    }
    let upper = z.sqrt().min(tail_limit(params.rate(), params.bessel_coef(), params.mu));
    let two = T::lit(2.0);
    from_zero(
        |t: T| Ok(two * t * kappa_mu_pdf(params, t * t, cfg)?),
        upper,
        two * params.mu - T::one(),
        &options(cfg),
    )
}

/// ∫₀^∞ Q_u(√(2γ), √λ) f(γ) dγ over the κ-μ density f.
pub fn quad_detection<T: Real>(
    u: T,
    lambda: T,
    channel: &KappaMuParams<T>,
    cfg: &EvalConfig<T>,
) -> Result<QuadResult<T>> {
    channel.validate()?;
    if !(u > T::zero()) || !(lambda >= T::zero()) {
        return Err(Error::domain(
            "quad_detection",
            format!("need u > 0 and lambda >= 0, got {u}, {lambda}"),
        ));
    }
    let two = T::lit(2.0);
    let upper = tail_limit(channel.rate(), channel.bessel_coef(), channel.mu);
    from_zero(
        |t: T| {
            let q = marcum_q(u, SignedSquareArg::new(two * t * t), SignedSquareArg::new(lambda), cfg)?;
            Ok(two * t * q * kappa_mu_pdf(channel, t * t, cfg)?)
        },
        upper,
        two * channel.mu - T::one(),
        &options(cfg),
    )
}
