//! Adaptive quadrature on finite intervals: 15-point Gauss–Kronrod panels
//! and 10-point Gauss–Legendre panels, both refined by bisection of the
//! panel with the largest error estimate.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Sum of the per-panel error estimates; always ≥ 0.
    pub abs_err_estimate: T,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// 7-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const XGL10: [f64; 5] = [
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.973_906_528_517_171_720_077_964_012_084_452,
];
const WGL10: [f64; 5] = [
    0.295_524_224_714_752_870_173_892_994_651_338,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.066_671_344_308_688_137_593_568_809_893_332,
];

/// Which fixed panel rule the adaptive driver uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelRule {
    /// Kronrod 15 with the embedded Gauss 7 as error estimate.
    GaussKronrod15,
    /// Gauss–Legendre 10; the error is the change under one bisection.
    GaussLegendre10,
}

fn gk15<T: Real, F: FnMut(T) -> Result<T>>(f: &mut F, a: T, b: T) -> Result<(T, T, usize)> {
    let half = (b - a) / T::lit(2.0);
    let mid = (a + b) / T::lit(2.0);
    let fc = f(mid)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let s = f(mid - dx)? + f(mid + dx)?;
        kronrod += T::lit(WGK[i]) * s;
        if i % 2 == 1 {
            gauss += T::lit(WG[i / 2]) * s;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs(), 15))
}

fn gl10<T: Real, F: FnMut(T) -> Result<T>>(f: &mut F, a: T, b: T) -> Result<T> {
    let half = (b - a) / T::lit(2.0);
    let mid = (a + b) / T::lit(2.0);
    let mut acc = T::zero();
    for i in 0..5 {
        let dx = half * T::lit(XGL10[i]);
        acc += T::lit(WGL10[i]) * (f(mid - dx)? + f(mid + dx)?);
    }
    Ok(acc * half)
}

fn panel<T: Real, F: FnMut(T) -> Result<T>>(rule: PanelRule, f: &mut F, a: T, b: T) -> Result<(T, T, usize)> {
    match rule {
        PanelRule::GaussKronrod15 => gk15(f, a, b),
        PanelRule::GaussLegendre10 => {
            let m = (a + b) / T::lit(2.0);
            let whole = gl10(f, a, b)?;
            let split = gl10(f, a, m)? + gl10(f, m, b)?;
            Ok((split, (split - whole).abs(), 30))
        }
    }
}

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_panels: usize,
    /// Number of equal panels the interval is cut into before refinement.
    pub initial_panels: usize,
    pub rule: PanelRule,
}

impl<T: Real> QuadOptions<T> {
    pub fn new(abs_tol: T, rel_tol: T) -> Self {
        Self {
            abs_tol,
            rel_tol,
            max_panels: 4000,
            initial_panels: 1,
            rule: PanelRule::GaussKronrod15,
        }
    }

    pub fn with_initial_panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self
    }

    pub fn with_rule(mut self, rule: PanelRule) -> Self {
        self.rule = rule;
        self
    }
}

/// ∫_a^b f by adaptive bisection until the summed error estimate is below
/// max(abs_tol, rel_tol·|value|).
///
/// Returns [`Error::ToleranceNotReached`] with the best estimate when the
/// panel budget runs out.
pub fn integrate<T: Real, F: FnMut(T) -> Result<T>>(
    mut f: F,
    a: T,
    b: T,
    opts: &QuadOptions<T>,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            abs_err_estimate: T::zero(),
            evaluations: 1,
        });
    }
    let mut panels: Vec<(T, T, T, T)> = Vec::new();
    let mut evaluations = 0;
    let width = (b - a) / T::from_count(opts.initial_panels);
    for i in 0..opts.initial_panels {
        let lo = a + width * T::from_count(i);
        let hi = if i + 1 == opts.initial_panels { b } else { lo + width };
        let (v, e, n) = panel(opts.rule, &mut f, lo, hi)?;
        evaluations += n;
        panels.push((lo, hi, v, e));
    }
    loop {
        let value = panels.iter().fold(T::zero(), |s, p| s + p.2);
        let err = panels.iter().fold(T::zero(), |s, p| s + p.3);
        if !value.is_finite() {
            return Err(Error::domain("integrate", "integrand is not finite"));
        }
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if err <= target {
            return Ok(QuadResult {
                value,
                abs_err_estimate: err,
                evaluations,
            });
        }
        if panels.len() >= opts.max_panels {
            return Err(Error::ToleranceNotReached {
                estimate: value.as_f64(),
                abs_err: err.as_f64(),
            });
        }
        let (idx, _) =
            panels.iter().enumerate().fold(
                (0, T::neg_infinity()),
                |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best },
            );
        let (lo, hi, _, _) = panels.swap_remove(idx);
        let mid = (lo + hi) / T::lit(2.0);
        for (l, h) in [(lo, mid), (mid, hi)] {
            let (v, e, n) = panel(opts.rule, &mut f, l, h)?;
            evaluations += n;
            panels.push((l, h, v, e));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomials_are_exact() {
        let opts = QuadOptions::new(1e-14, 1e-14);
        let r = integrate(|x: f64| Ok(x.powi(5) - 2.0 * x), 0.0, 2.0, &opts).unwrap();
        assert_relative_eq!(r.value, 64.0 / 6.0 - 4.0, max_relative = 1e-14);
        assert!(r.evaluations > 0 && r.abs_err_estimate >= 0.0);
        let gl = opts.with_rule(PanelRule::GaussLegendre10);
        let r = integrate(|x: f64| Ok(x.powi(7)), -1.0, 3.0, &gl).unwrap();
        assert_relative_eq!(r.value, (3.0_f64.powi(8) - 1.0) / 8.0, max_relative = 1e-13);
    }

    #[test]
    fn endpoint_singularity_is_refined() {
        let opts = QuadOptions::new(1e-11, 1e-11);
        let r = integrate(|x: f64| Ok(1.0 / x.sqrt()), 0.0, 1.0, &opts).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut opts = QuadOptions::new(1e-15, 1e-15);
        opts.max_panels = 2;
        let err = integrate(|x: f64| Ok((50.0 * x).sin()), 0.0, 10.0, &opts).unwrap_err();
        assert!(matches!(err, Error::ToleranceNotReached { .. }));
    }
}
