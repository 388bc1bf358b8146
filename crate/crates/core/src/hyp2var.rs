//! Humbert's confluent functions of two variables, Φ₃ and Ψ₂, their
//! regularized forms and the finite closed forms available at special
//! parameter combinations.

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::marcum::marcum_p_scaled;
use crate::scalar::{signed_powi, Real};
use crate::series::StopRule;
use crate::specfun::{bessel_i, pochhammer, recip_gamma};

/// Distance from a nonpositive integer under which the regularized
/// evaluators switch to the finite closed forms.
pub const POLE_PROXIMITY: f64 = 1e-8;

/// Arguments of Φ₃(b; g; w, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi3Args<T> {
    pub b: T,
    pub g: T,
    pub w: T,
    pub z: T,
}

/// Arguments of Ψ₂(a; d, d2; w, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Psi2Args<T> {
    pub a: T,
    pub d: T,
    pub d2: T,
    pub w: T,
    pub z: T,
}

fn near_pole<T: Real>(x: T) -> bool {
    let r = x.round();
    r <= T::zero() && (x - r).abs() <= T::lit(POLE_PROXIMITY)
}

fn pole_check<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x.is_nonpositive_integer() {
        Err(Error::Pole {
            function,
            at: x.as_f64(),
        })
    } else {
        Ok(())
    }
}

/// Sums Σ_s f(s) Σ_{k+l=s} A_k B_l along anti-diagonals.
///
/// `next_a(k)` must return A_k / A_{k−1} (k ≥ 1), likewise `next_b`, and
/// `diag(s)` the factor shared by a whole diagonal. Truncation uses the
/// absolute diagonal sum so that a diagonal which happens to cancel does
/// not end the summation early; no stop is taken before the diagonal index
/// passes `warmup`, roughly where the terms peak.
fn antidiagonal_sum<T: Real>(
    function: &'static str,
    mut next_a: impl FnMut(usize) -> T,
    mut next_b: impl FnMut(usize) -> T,
    mut diag: impl FnMut(usize) -> T,
    warmup: T,
    cfg: &EvalConfig<T>,
) -> Result<T> {
    let mut a = vec![T::one()];
    let mut b = vec![T::one()];
    let mut sum = T::zero();
    let mut rule = StopRule::new(cfg.rel_tol);
    for s in 0..cfg.max_terms {
        if s > 0 {
            let an = a[s - 1] * next_a(s);
            let bn = b[s - 1] * next_b(s);
            a.push(an);
            b.push(bn);
        }
        let f = diag(s);
        let mut d = T::zero();
        let mut d_abs = T::zero();
        for k in 0..=s {
            let t = a[k] * b[s - k];
            d += t;
            d_abs += t.abs();
        }
        sum += f * d;
        let small = rule.update(f.abs() * d_abs, sum);
        if small && T::from_count(s) > warmup {
            return Ok(sum);
        }
        if !sum.is_finite() {
            return Err(Error::domain(function, "series overflowed"));
        }
    }
    Err(Error::NonConvergence {
        function,
        terms: cfg.max_terms,
    })
}

/// Φ₃(b; g; w, z) = Σ_{k,l} (b)_k / ((g)_{k+l} k! l!) w^k z^l.
pub fn phi3<T: Real>(args: Phi3Args<T>, cfg: &EvalConfig<T>) -> Result<T> {
    let Phi3Args { b, g, w, z } = args;
    pole_check("phi3", g)?;
    let mut pg = T::one();
    antidiagonal_sum(
        "phi3",
        |k| (b + T::from_count(k - 1)) * w / T::from_count(k),
        |l| z / T::from_count(l),
        |s| {
            if s > 0 {
                pg *= g + T::from_count(s - 1);
            }
            T::one() / pg
        },
        w.abs() + z.abs().sqrt(),
        cfg,
    )
}

/// Φ̃₃ = Φ₃/Γ(g), finite for every real g.
///
/// For b = −k (k ∈ ℤ⁺), z > 0 and g within [`POLE_PROXIMITY`] of a pole the
/// finite Bessel sum [`phi3_reg_negint_b`] is used; elsewhere the series with
/// 1/Γ(g + k + l) in place of 1/(g)_{k+l}.
pub fn phi3_regularized<T: Real>(args: Phi3Args<T>, cfg: &EvalConfig<T>) -> Result<T> {
    let Phi3Args { b, g, w, z } = args;
    if near_pole(g) && b < T::zero() && b.is_integer() && z > T::zero() {
        let k = (-b).to_usize().unwrap_or(0);
        return phi3_reg_negint_b(k, g, w, z, cfg);
    }
    antidiagonal_sum(
        "phi3",
        |k| (b + T::from_count(k - 1)) * w / T::from_count(k),
        |l| z / T::from_count(l),
        |s| recip_gamma(g + T::from_count(s)),
        w.abs() + z.abs().sqrt(),
        cfg,
    )
}

/// Ψ₂(a; d, d2; w, z) = Σ_{k,l} (a)_{k+l} / ((d)_k (d2)_l k! l!) w^k z^l.
pub fn psi2<T: Real>(args: Psi2Args<T>, cfg: &EvalConfig<T>) -> Result<T> {
    let Psi2Args { a, d, d2, w, z } = args;
    pole_check("psi2", d)?;
    pole_check("psi2", d2)?;
    let mut pa = T::one();
    antidiagonal_sum(
        "psi2",
        |k| w / ((d + T::from_count(k - 1)) * T::from_count(k)),
        |l| z / ((d2 + T::from_count(l - 1)) * T::from_count(l)),
        |s| {
            if s > 0 {
                pa *= a + T::from_count(s - 1);
            }
            pa
        },
        w.abs() + z.abs(),
        cfg,
    )
}

/// Ψ̃₂ = Ψ₂/Γ(d), summed with 1/Γ(d + k) so that d may sit on a pole.
///
/// The two special families Ψ̃₂(a; a+n; a) and Ψ̃₂(a+n; a; a+n) are routed
/// to [`psi2_reg_corollary1`] and [`psi2_reg_corollary2`] when a parameter
/// is within [`POLE_PROXIMITY`] of a pole.
pub fn psi2_regularized<T: Real>(args: Psi2Args<T>, cfg: &EvalConfig<T>) -> Result<T> {
    let Psi2Args { a, d, d2, w, z } = args;
    let poles_near = near_pole(a) || near_pole(d) || near_pole(d2);
    if poles_near && w > T::zero() {
        let offset = d - a;
        if d2 == a && offset > T::zero() && offset.is_integer() && z >= T::zero() {
            let n = offset.to_usize().unwrap_or(0);
            return psi2_reg_corollary1(a, n, w, z, cfg);
        }
        let offset = a - d;
        if d2 == a && offset > T::zero() && offset.is_integer() && z > T::zero() {
            let n = offset.to_usize().unwrap_or(0);
            return psi2_reg_corollary2(d, n, w, z, cfg);
        }
    }
    pole_check("psi2", d2)?;
    psi2_regularized_direct(a, d, d2, w, z, cfg)
}

/// Direct regularized sum; the 1/Γ(d + k) factor does not separate into a
/// ratio recursion at the poles, so it is evaluated per k.
fn psi2_regularized_direct<T: Real>(a: T, d: T, d2: T, w: T, z: T, cfg: &EvalConfig<T>) -> Result<T> {
    let mut rg = Vec::new();
    let mut pa = T::one();
    let mut a_coef = vec![T::one()];
    let mut b_coef = vec![T::one()];
    let mut sum = T::zero();
    let mut rule = StopRule::new(cfg.rel_tol);
    let warmup = w.abs() + z.abs();
    for s in 0..cfg.max_terms {
        let sf = T::from_count(s);
        rg.push(recip_gamma(d + sf));
        if s > 0 {
            pa *= a + sf - T::one();
            let an = a_coef[s - 1] * w / sf;
            let bn = b_coef[s - 1] * z / ((d2 + sf - T::one()) * sf);
            a_coef.push(an);
            b_coef.push(bn);
        }
        let mut diag = T::zero();
        let mut diag_abs = T::zero();
        for k in 0..=s {
            let t = a_coef[k] * rg[k] * b_coef[s - k];
            diag += t;
            diag_abs += t.abs();
        }
        sum += pa * diag;
        if rule.update((pa * diag_abs).abs(), sum) && sf > warmup {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "psi2",
        terms: cfg.max_terms,
    })
}

/// Φ₃(b; g; z, w) through its Bessel expansion
/// Γ(g) w^{(1−g)/2} Σ_j (b)_j/j! (z/√w)^j I_{g+j−1}(2√w), for w > 0.
pub fn phi3_bessel_expansion<T: Real>(b: T, g: T, z: T, w: T, cfg: &EvalConfig<T>) -> Result<T> {
    pole_check("phi3", g)?;
    if !(w > T::zero()) {
        return Err(Error::domain("phi3_bessel_expansion", "needs w > 0"));
    }
    let sw = w.sqrt();
    let x = T::lit(2.0) * sw;
    let ratio = z / sw;
    let mut coef = T::one();
    let mut sum = T::zero();
    let mut rule = StopRule::new(cfg.rel_tol);
    let warmup = (z.abs() / sw).max(sw);
    for j in 0..cfg.max_terms {
        let jf = T::from_count(j);
        if j > 0 {
            coef *= (b + jf - T::one()) * ratio / jf;
        }
        let term = coef * bessel_i(g + jf - T::one(), x, cfg)?;
        sum += term;
        if rule.update(term, sum) && jf > warmup {
            let g_fn = crate::specfun::gamma(g)?;
            return Ok(g_fn * w.powf((T::one() - g) / T::lit(2.0)) * sum);
        }
    }
    Err(Error::NonConvergence {
        function: "phi3_bessel_expansion",
        terms: cfg.max_terms,
    })
}

/// Φ̃₃(−k; g; ςx, wx) as the finite Bessel sum
/// (wx)^{(1−g)/2} Σ_{j=0}^{k} (−k)_j/j! (ςx/√(wx))^j I_{g+j−1}(2√(wx)).
///
/// Valid for every real g, including the poles of Φ₃.
pub fn phi3_reg_negint_b<T: Real>(k: usize, g: T, varsigma_x: T, w_x: T, cfg: &EvalConfig<T>) -> Result<T> {
    if !(w_x > T::zero()) {
        return Err(Error::domain(
            "phi3_reg_negint_b",
            format!("w_x must be > 0, got {w_x}"),
        ));
    }
    let sw = w_x.sqrt();
    let x = T::lit(2.0) * sw;
    let ratio = varsigma_x / sw;
    let neg_k = -T::from_count(k);
    let mut coef = T::one();
    let mut sum = T::zero();
    for j in 0..=k {
        let jf = T::from_count(j);
        if j > 0 {
            coef *= (neg_k + jf - T::one()) * ratio / jf;
        }
        sum += coef * bessel_i(g + jf - T::one(), x, cfg)?;
    }
    Ok(w_x.powf((T::one() - g) / T::lit(2.0)) * sum)
}

/// δ_j(b, g, w, z) =
/// (−1)^{b−1} z^{b−1−j} / (w^{b−1} Γ(b)) Σ_{k=0}^{⌊j/2⌋} (−1)^k (b−j+k)_{j−k} (g−j−1+k)_{j−2k} / ((j−2k)! k!) z^k.
///
/// Terms whose Pochhammer coefficient vanishes are skipped, so z = 0 is
/// allowed whenever the surviving powers of z are nonnegative.
pub fn delta_coeff<T: Real>(j: usize, b: usize, g: T, w: T, z: T) -> Result<T> {
    if b == 0 || j > 2 * (b - 1) {
        return Err(Error::domain(
            "delta_coeff",
            format!("need b >= 1 and 0 <= j <= 2(b-1); got j = {j}, b = {b}"),
        ));
    }
    if w == T::zero() {
        return Err(Error::DivisionByZero {
            function: "delta_coeff",
            what: "w",
        });
    }
    let bf = T::from_count(b);
    let jf = T::from_count(j);
    let mut sum = T::zero();
    let mut k_fact = T::one();
    for k in 0..=j / 2 {
        let kf = T::from_count(k);
        if k > 0 {
            k_fact *= kf;
        }
        let mut jk_fact = T::one();
        for i in 1..=(j - 2 * k) {
            jk_fact *= T::from_count(i);
        }
        let coef = pochhammer(bf - jf + kf, j - k) * pochhammer(g - jf - T::one() + kf, j - 2 * k);
        if coef == T::zero() {
            continue;
        }
        let power = b as i64 - 1 - j as i64 + k as i64;
        if z == T::zero() && power < 0 {
            return Err(Error::DivisionByZero {
                function: "delta_coeff",
                what: "z",
            });
        }
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        sum += sign * coef / (jk_fact * k_fact) * signed_powi(z, power);
    }
    let mut gamma_b = T::one();
    for i in 1..b {
        gamma_b *= T::from_count(i);
    }
    let lead = if (b - 1).is_multiple_of(2) { T::one() } else { -T::one() };
    Ok(lead * sum / (signed_powi(w, b as i64 - 1) * gamma_b))
}

/// Ψ̃₂(a; a+n; a; w; z) = Ψ₂/Γ(a+n) as a finite sum of modified Marcum
/// terms. Written with the scaled complement
/// C_M(x, y) = (1 − Q_M)/(y/2)^M of signed squares x = −2z, y = −2w, the
/// sum reads Σ_{j=0}^{2(n−1)} δ_j(n, a+n, −w, wz) C_{a+n−j−1}(−2z, −2w),
/// entirely in real arithmetic.
pub fn psi2_reg_corollary1<T: Real>(a: T, n: usize, w: T, z: T, cfg: &EvalConfig<T>) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("psi2_reg_corollary1", "n must be a positive integer"));
    }
    if !(w > T::zero()) || !(z >= T::zero()) {
        return Err(Error::domain(
            "psi2_reg_corollary1",
            format!("need w > 0 and z >= 0, got w = {w}, z = {z}"),
        ));
    }
    let g = a + T::from_count(n);
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for j in 0..=2 * (n - 1) {
        let delta = delta_coeff(j, n, g, -w, w * z)?;
        if delta == T::zero() {
            continue;
        }
        let order = g - T::from_count(j) - T::one();
        sum += delta * marcum_p_scaled(order, -two * z, -two * w, cfg)?;
    }
    Ok(sum)
}

/// Ψ̃₂(a+n; a; a+n; w; z) = Ψ₂/Γ(a) =
/// e^{w+z} (wz)^{(1−a)/2} Σ_{j=0}^{n} (−1)^j (−n)_j/j! (w/z)^{j/2} I_{a+j−1}(2√(wz)).
pub fn psi2_reg_corollary2<T: Real>(a: T, n: usize, w: T, z: T, cfg: &EvalConfig<T>) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("psi2_reg_corollary2", "n must be a positive integer"));
    }
    if !(w > T::zero()) || !(z > T::zero()) {
        return Err(Error::domain(
            "psi2_reg_corollary2",
            format!("need w > 0 and z > 0, got w = {w}, z = {z}"),
        ));
    }
    let x = T::lit(2.0) * (w * z).sqrt();
    let ratio = (w / z).sqrt();
    let neg_n = -T::from_count(n);
    let mut coef = T::one();
    let mut sum = T::zero();
    for j in 0..=n {
        let jf = T::from_count(j);
        if j > 0 {
            // (−1)^j (−n)_j / j! builds up as a positive binomial
            coef *= -(neg_n + jf - T::one()) * ratio / jf;
        }
        sum += coef * bessel_i(a + jf - T::one(), x, cfg)?;
    }
    Ok((w + z).exp() * (w * z).powf((T::one() - a) / T::lit(2.0)) * sum)
}
