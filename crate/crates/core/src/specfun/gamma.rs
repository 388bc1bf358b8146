use crate::error::{Error, Result};
use crate::scalar::{Real, SignedLog};

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(z: T) -> T {
    let mut sum = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum += T::lit(c) / (z + T::from_count(i + 1));
    }
    sum
}

/// sin(πx) with the argument reduced before multiplying by π.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x - two * (x / two).round();
    // r in [-1, 1]; fold onto [-1/2, 1/2] using sin(π(1 - r)) = sin(πr).
    if r > T::lit(0.5) {
        r = T::one() - r;
    } else if r < T::lit(-0.5) {
        r = -T::one() - r;
    }
    (T::PI() * r).sin()
}

/// Largest integer argument for which Γ is formed as an exact product.
const EXACT_FACTORIAL_MAX: f64 = 30.0;

/// (x − 1)! for integer 1 ≤ x ≤ 30.
fn small_factorial<T: Real>(x: T) -> Option<T> {
    if !(x.is_integer() && x >= T::one() && x <= T::lit(EXACT_FACTORIAL_MAX)) {
        return None;
    }
    let n = x.to_usize()?;
    Some((2..n).fold(T::one(), |acc, i| acc * T::from_count(i)))
}

/// ln Γ(x) for x ≥ 1/2 (Lanczos).
fn ln_gamma_positive<T: Real>(x: T) -> T {
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G + 0.5);
    T::lit(0.5) * (T::lit(2.0) * T::PI()).ln() + (z + T::lit(0.5)) * t.ln() - t + lanczos_sum(z).ln()
}

/// ln |Γ(x)| together with the sign of Γ(x).
///
/// Uses the reflection formula for x < 1/2. Nonpositive integers are poles.
pub fn ln_gamma<T: Real>(x: T) -> Result<SignedLog<T>> {
    if x.is_nan() {
        return Err(Error::domain("ln_gamma", "NaN argument"));
    }
    if x.is_nonpositive_integer() {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: x.as_f64(),
        });
    }
    if let Some(f) = small_factorial(x) {
        return Ok(SignedLog::new(f.ln(), T::one()));
    }
    if x >= T::lit(0.5) {
        return Ok(SignedLog::new(ln_gamma_positive(x), T::one()));
    }
    // Γ(x) Γ(1 − x) = π / sin(πx)
    let s = sin_pi(x);
    let ln_abs = T::PI().ln() - s.abs().ln() - ln_gamma_positive(T::one() - x);
    Ok(SignedLog::new(ln_abs, s.signum()))
}

/// Γ(x).
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if let Some(f) = small_factorial(x) {
        return Ok(f);
    }
    if x >= T::lit(0.5) && x < T::lit(141.0) {
        let z = x - T::one();
        let t = z + T::lit(LANCZOS_G + 0.5);
        // Split the power to keep t^(z+1/2) finite up to the overflow edge.
        let half = t.powf((z + T::lit(0.5)) / T::lit(2.0));
        let g = (T::lit(2.0) * T::PI()).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z);
        if g.is_finite() {
            return Ok(g);
        }
    }
    Ok(ln_gamma(x)?.value())
}

/// 1/Γ(x), an entire function: zero at the poles of Γ.
pub fn recip_gamma<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x.is_nonpositive_integer() {
        return T::zero();
    }
    if x < T::lit(0.5) {
        // 1/Γ(x) = Γ(1 − x) sin(πx) / π
        let reflected = ln_gamma_positive(T::one() - x);
        return (reflected - T::PI().ln()).exp() * sin_pi(x);
    }
    match gamma(x) {
        Ok(g) if g.is_finite() => T::one() / g,
        _ => (-ln_gamma_positive(x)).exp(),
    }
}

/// Rising factorial (a)_k = a(a+1)…(a+k−1); (a)_0 = 1 for every a.
pub fn pochhammer<T: Real>(a: T, k: usize) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc *= a + T::from_count(i);
    }
    acc
}

/// ln k! via ln Γ(k + 1).
pub(crate) fn ln_factorial<T: Real>(k: usize) -> T {
    if k < 2 {
        return T::zero();
    }
    ln_gamma_positive(T::from_count(k + 1))
}
