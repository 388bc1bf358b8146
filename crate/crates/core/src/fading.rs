//! κ-μ fading: the power distribution, outage under κ-μ co-channel
//! interference and energy detection over κ-μ channels.

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::laplace::{in_dispatch, LaplaceParams, LaplaceValue, MethodPath};
use crate::marcum::{marcum_p, marcum_q, SignedSquareArg};
use crate::oracle::{quad_detection, sample_kappa_mu};
use crate::scalar::Real;
use crate::specfun::{ln_bessel_i, upper_gamma_reg};

/// (κ, μ, Ω) of a κ-μ power variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaMuParams<T> {
    pub kappa: T,
    pub mu: T,
    pub omega: T,
}

impl<T: Real> KappaMuParams<T> {
    pub fn new(kappa: T, mu: T, omega: T) -> Result<Self> {
        let params = Self { kappa, mu, omega };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("kappa", self.kappa), ("mu", self.mu), ("omega", self.omega)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::domain(
                    "kappa_mu",
                    format!("{name} must be finite and > 0, got {v}"),
                ));
            }
        }
        Ok(())
    }

    /// μ(1+κ)/Ω, the exponential rate of the density.
    pub fn rate(&self) -> T {
        self.mu * (T::one() + self.kappa) / self.omega
    }

    /// 2μ√(κ(1+κ)/Ω), the Bessel argument coefficient of √x.
    pub fn bessel_coef(&self) -> T {
        T::lit(2.0) * self.mu * (self.kappa * (T::one() + self.kappa) / self.omega).sqrt()
    }

    /// ln of μ(1+κ)^{(μ+1)/2} / (κ^{(μ−1)/2} e^{μκ} Ω^{(μ+1)/2}).
    pub fn ln_norm(&self) -> T {
        let half = T::lit(0.5);
        let (k, m, o) = (self.kappa, self.mu, self.omega);
        m.ln() + (m + T::one()) * half * (T::one() + k).ln()
            - (m - T::one()) * half * k.ln()
            - m * k
            - (m + T::one()) * half * o.ln()
    }

    fn require_integer_mu(&self, function: &'static str) -> Result<usize> {
        if !self.mu.is_integer() {
            return Err(Error::domain(
                function,
                format!("mu must be a positive integer, got {}", self.mu),
            ));
        }
        Ok(self.mu.to_usize().unwrap_or(0))
    }
}

/// κ-μ power density at x ≥ 0.
///
/// At x = 0 the density is 0 for μ > 1 and (1+κ)e^{−κ}/Ω for μ = 1; for
/// μ < 1 it diverges and a domain error is returned.
pub fn kappa_mu_pdf<T: Real>(params: &KappaMuParams<T>, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    params.validate()?;
    if !(x >= T::zero()) {
        return Err(Error::domain("kappa_mu_pdf", format!("x must be >= 0, got {x}")));
    }
    if x == T::zero() {
        return if params.mu > T::one() {
            Ok(T::zero())
        } else if params.mu == T::one() {
            Ok((T::one() + params.kappa) * (-params.kappa).exp() / params.omega)
        } else {
            Err(Error::domain("kappa_mu_pdf", "density diverges at x = 0 for mu < 1"))
        };
    }
    let nu = params.mu - T::one();
    let ln_i = ln_bessel_i(nu, params.bessel_coef() * x.sqrt(), cfg)?;
    let ln_v = params.ln_norm() + nu / T::lit(2.0) * x.ln() - params.rate() * x + ln_i.ln_abs;
    Ok(ln_i.sign * ln_v.exp())
}

/// κ-μ power CDF, 1 − Q_μ(√(2κμ), √(2(1+κ)μz/Ω)).
pub fn kappa_mu_cdf<T: Real>(params: &KappaMuParams<T>, z: T, cfg: &EvalConfig<T>) -> Result<T> {
    params.validate()?;
    if !(z >= T::zero()) {
        return Err(Error::domain("kappa_mu_cdf", format!("z must be >= 0, got {z}")));
    }
    let two = T::lit(2.0);
    let a2 = two * params.kappa * params.mu;
    let b2 = two * params.rate() * z;
    marcum_p(params.mu, SignedSquareArg::new(a2), SignedSquareArg::new(b2), cfg)
}

/// Desired signal and one co-channel interferer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceScenario<T> {
    pub soi: KappaMuParams<T>,
    pub cci: KappaMuParams<T>,
}

impl<T: Real> InterferenceScenario<T> {
    /// The scenario with Ω_I kept and Ω_S = Ω_I·10^{SIR/10}.
    pub fn at_sir_db(&self, sir_db: T) -> Result<Self> {
        let omega = self.cci.omega * T::lit(10.0).powf(sir_db / T::lit(10.0));
        Ok(Self {
            soi: KappaMuParams::new(self.soi.kappa, self.soi.mu, omega)?,
            cci: self.cci,
        })
    }
}

/// P(γ_S < z·γ_I) for integer μ_S, μ_I, with the powers taken from the
/// scenario as given.
pub fn outage_probability_at<T: Real>(
    scenario: &InterferenceScenario<T>,
    z: T,
    cfg: &EvalConfig<T>,
) -> Result<LaplaceValue<T>> {
    let (s, i) = (scenario.soi, scenario.cci);
    s.validate()?;
    i.validate()?;
    s.require_integer_mu("outage_probability")?;
    i.require_integer_mu("outage_probability")?;
    if !(z >= T::zero()) {
        return Err(Error::domain(
            "outage_probability",
            format!("threshold must be >= 0, got {z}"),
        ));
    }
    if z == T::zero() {
        return Ok(LaplaceValue {
            value: T::zero(),
            path: MethodPath::EqualOrders,
        });
    }
    let two = T::lit(2.0);
    let alpha2 = two * s.kappa * s.mu;
    let beta2 = two * s.rate() * z;
    let params = LaplaceParams::new(beta2, alpha2, i.bessel_coef(), i.rate(), T::one() - s.mu, i.mu)?;
    let inner = in_dispatch(&params, cfg)?;
    Ok(LaplaceValue {
        value: i.ln_norm().exp() * inner.value,
        path: inner.path,
    })
}

/// Outage probability with the SIR given in dB (Ω_S = Ω_I·10^{SIR/10}).
pub fn outage_probability<T: Real>(
    scenario: &InterferenceScenario<T>,
    sir_db: T,
    z: T,
    cfg: &EvalConfig<T>,
) -> Result<LaplaceValue<T>> {
    outage_probability_at(&scenario.at_sir_db(sir_db)?, z, cfg)
}

/// A Monte-Carlo probability estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

/// Simulated outage: the fraction of trials with γ_S < z·γ_I.
///
/// The two powers come from independent streams seeded with `seed` and a
/// fixed offset of it.
pub fn outage_monte_carlo<T: Real>(
    scenario: &InterferenceScenario<T>,
    sir_db: T,
    z: T,
    trials: usize,
    seed: u64,
) -> Result<McEstimate> {
    let sc = scenario.at_sir_db(sir_db)?;
    if trials == 0 {
        return Err(Error::domain("outage_monte_carlo", "need at least one trial"));
    }
    let signal = sample_kappa_mu(&sc.soi, trials, seed)?;
    let interference = sample_kappa_mu(&sc.cci, trials, seed ^ 0x9e37_79b9_7f4a_7c15)?;
    let hits = signal.zip(interference).filter(|(gs, gi)| *gs < z * *gi).count();
    let n = trials as f64;
    let p = hits as f64 / n;
    Ok(McEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / n).sqrt(),
    })
}

/// λ with Γ(u, λ/2)/Γ(u) = pf, by bisection to 1e-13 relative width.
pub fn threshold_from_pf<T: Real>(u: T, pf: T, cfg: &EvalConfig<T>) -> Result<T> {
    if !(u > T::zero()) || !(pf > T::zero() && pf < T::one()) {
        return Err(Error::domain(
            "threshold_from_pf",
            format!("need u > 0 and 0 < pf < 1, got u = {u}, pf = {pf}"),
        ));
    }
    let two = T::lit(2.0);
    let tail = |lambda: T| upper_gamma_reg(u, lambda / two, cfg);
    let mut lo = T::zero();
    let mut hi = two * u + T::one();
    while tail(hi)? > pf {
        lo = hi;
        hi *= two;
        if !hi.is_finite() {
            return Err(Error::domain("threshold_from_pf", "threshold bracket overflowed"));
        }
    }
    let width_tol = T::lit(1e-13).max(T::epsilon() * T::lit(4.0));
    for _ in 0..400 {
        let mid = (lo + hi) / two;
        if tail(mid)? > pf {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= width_tol * hi {
            break;
        }
    }
    Ok((lo + hi) / two)
}

/// AWGN detection probability Q_u(√(2γ), √λ).
pub fn detection_probability_awgn<T: Real>(u: T, snr: T, lambda: T, cfg: &EvalConfig<T>) -> Result<T> {
    if !(snr >= T::zero()) || !(lambda >= T::zero()) || !(u > T::zero()) {
        return Err(Error::domain(
            "detection_probability_awgn",
            format!("need u > 0, snr >= 0, lambda >= 0; got {u}, {snr}, {lambda}"),
        ));
    }
    marcum_q(
        u,
        SignedSquareArg::new(T::lit(2.0) * snr),
        SignedSquareArg::new(lambda),
        cfg,
    )
}

/// Energy detector (u, λ) over a κ-μ channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionParams<T> {
    pub u: T,
    pub lambda: T,
    pub channel: KappaMuParams<T>,
}

impl<T: Real> DetectionParams<T> {
    pub fn new(u: T, lambda: T, channel: KappaMuParams<T>) -> Result<Self> {
        let d = Self { u, lambda, channel };
        d.validate()?;
        Ok(d)
    }

    /// Uses the threshold that gives false-alarm probability `pf`.
    pub fn from_pf(u: T, pf: T, channel: KappaMuParams<T>, cfg: &EvalConfig<T>) -> Result<Self> {
        Self::new(u, threshold_from_pf(u, pf, cfg)?, channel)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.u > T::zero() && self.u.is_finite()) || !(self.lambda > T::zero() && self.lambda.is_finite()) {
            return Err(Error::domain(
                "detection",
                format!(
                    "need u > 0 and lambda > 0, got u = {}, lambda = {}",
                    self.u, self.lambda
                ),
            ));
        }
        self.channel.validate()
    }
}

/// Average detection probability over κ-μ fading.
///
/// Uses the closed form when u − μ is an integer and falls back to
/// quadrature otherwise (or if the closed form fails); the path says which.
pub fn detection_probability_kappa_mu<T: Real>(d: &DetectionParams<T>, cfg: &EvalConfig<T>) -> Result<LaplaceValue<T>> {
    d.validate()?;
    if let Ok(v) = detection_closed_form(d, cfg) {
        return Ok(v);
    }
    Ok(LaplaceValue {
        value: quad_detection(d.u, d.lambda, &d.channel, cfg)?.value,
        path: MethodPath::QuadratureFallback,
    })
}

/// The closed form alone: prefactor times In(√2, √λ, ĉ, p̂, u, μ).
pub fn detection_closed_form<T: Real>(d: &DetectionParams<T>, cfg: &EvalConfig<T>) -> Result<LaplaceValue<T>> {
    d.validate()?;
    let ch = d.channel;
    let params = LaplaceParams::new(T::lit(2.0), d.lambda, ch.bessel_coef(), ch.rate(), d.u, ch.mu)?;
    let inner = in_dispatch(&params, cfg)?;
    let value = ch.ln_norm().exp() * inner.value;
    if !value.is_finite() {
        return Err(Error::domain("detection", "closed form is not finite"));
    }
    Ok(LaplaceValue {
        value,
        path: inner.path,
    })
}
