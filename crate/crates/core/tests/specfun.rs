use approx::assert_relative_eq;
use humbertq::specfun::*;
use humbertq::{Error, EvalConfig64};
use proptest::prelude::*;

fn cfg() -> EvalConfig64 {
    EvalConfig64::default()
}

#[test]
fn ln_gamma_values() {
    let one = ln_gamma(1.0_f64).unwrap();
    assert_eq!((one.ln_abs, one.sign), (0.0, 1.0));
    let half = ln_gamma(0.5_f64).unwrap();
    assert_relative_eq!(half.ln_abs, std::f64::consts::PI.sqrt().ln(), max_relative = 1e-14);
    // Γ(−1.5) = 4√π/3
    let neg = ln_gamma(-1.5_f64).unwrap();
    assert_eq!(neg.sign, 1.0);
    assert_relative_eq!(neg.ln_abs, 0.860_047_015_376_481_014_51, max_relative = 1e-13);
    assert!(matches!(ln_gamma(-2.0_f64), Err(Error::Pole { .. })));
    assert!(matches!(ln_gamma(0.0_f64), Err(Error::Pole { .. })));
}

#[test]
fn pochhammer_values() {
    assert_eq!(pochhammer(3.0_f64, 0), 1.0);
    assert_eq!(pochhammer(0.0_f64, 0), 1.0);
    assert_eq!(pochhammer(-2.0_f64, 3), 0.0);
    assert_relative_eq!(pochhammer(0.5_f64, 3), 1.875, max_relative = 1e-15);
}

#[test]
fn bessel_i_values() {
    assert_eq!(bessel_i(0.0, 0.0, &cfg()).unwrap(), 1.0);
    let half = (2.0 / std::f64::consts::PI).sqrt() * 1.0_f64.sinh();
    assert_relative_eq!(bessel_i(0.5, 1.0, &cfg()).unwrap(), half, max_relative = 1e-14);
    // mpmath besseli, 30 digits
    assert_relative_eq!(
        bessel_i(2.3, 3.7, &cfg()).unwrap(),
        3.914_542_241_297_172_561_4,
        max_relative = 1e-13
    );
    assert!(bessel_i(-0.5, 0.0, &cfg()).is_err());
}

#[test]
fn bessel_i_integer_order_symmetry() {
    for n in [1.0, 2.0, 5.0] {
        for x in [0.1, 1.0, 5.0, 20.0] {
            let pos = bessel_i(n, x, &cfg()).unwrap();
            let neg = bessel_i(-n, x, &cfg()).unwrap();
            assert_relative_eq!(pos, neg, max_relative = 1e-12);
        }
    }
}

#[test]
fn hyp0f1_values() {
    assert_eq!(hyp0f1(1.5, 0.0, &cfg()).unwrap(), 1.0);
    assert_relative_eq!(
        hyp0f1(1.0, 1.0, &cfg()).unwrap(),
        bessel_i(0.0, 2.0, &cfg()).unwrap(),
        max_relative = 1e-14
    );
    // mpmath hyp0f1
    assert_relative_eq!(
        hyp0f1(2.5, 4.2, &cfg()).unwrap(),
        4.069_982_052_454_217_374_1,
        max_relative = 1e-13
    );
    assert!(matches!(hyp0f1(0.0, 1.0, &cfg()), Err(Error::Pole { .. })));
}

#[test]
fn hyp0f1_bessel_identity() {
    for q in [0.5_f64, 1.3, 4.0] {
        for z in [0.2_f64, 2.0, 9.0] {
            let rhs = gamma(q).unwrap() * z.powf((1.0 - q) / 2.0) * bessel_i(q - 1.0, 2.0 * z.sqrt(), &cfg()).unwrap();
            assert_relative_eq!(hyp0f1(q, z, &cfg()).unwrap(), rhs, max_relative = 1e-11);
        }
    }
}

#[test]
fn hyp1f1_values() {
    assert_relative_eq!(
        hyp1f1(0.9, 0.9, 1.7, &cfg()).unwrap(),
        1.7_f64.exp(),
        max_relative = 1e-14
    );
    assert_relative_eq!(
        hyp1f1(1.0, 2.0, 1.0, &cfg()).unwrap(),
        std::f64::consts::E - 1.0,
        max_relative = 1e-14
    );
    // mpmath hyp1f1; both evaluation routes must reach it
    let reference = 0.264_693_924_528_063_762_93;
    assert_relative_eq!(hyp1f1(0.7, 2.1, -8.0, &cfg()).unwrap(), reference, max_relative = 1e-12);
    assert_relative_eq!(
        hyp1f1_direct(0.7, 2.1, -8.0, &cfg()).unwrap(),
        reference,
        max_relative = 1e-11
    );
    assert_relative_eq!(
        hyp1f1_kummer(0.7, 2.1, -8.0, &cfg()).unwrap(),
        reference,
        max_relative = 1e-12
    );
}

#[test]
fn laguerre_values() {
    assert_eq!(laguerre(0, 0.3_f64, 7.0), 1.0);
    assert_relative_eq!(laguerre(1, 0.5_f64, 2.0), -0.5, max_relative = 1e-15);
    // explicit binomial sum in exact rationals: 0.124588083333…
    assert_relative_eq!(
        laguerre(5, 1.5_f64, 0.8),
        0.124_588_083_333_333_333_33,
        max_relative = 1e-13
    );
}

#[test]
fn upper_gamma_values() {
    assert_eq!(upper_gamma_reg(2.2, 0.0, &cfg()).unwrap(), 1.0);
    assert_relative_eq!(
        upper_gamma_reg(1.0, 2.0, &cfg()).unwrap(),
        (-2.0_f64).exp(),
        max_relative = 1e-14
    );
    // mpmath gammainc(regularized)
    assert_relative_eq!(
        upper_gamma_reg(2.5, 4.60517, &cfg()).unwrap(),
        0.100_962_839_257_587_413_68,
        max_relative = 1e-12
    );
}

#[test]
fn upper_gamma_is_nonincreasing() {
    for a in [0.3, 1.0, 2.5, 9.0] {
        let mut prev = 1.0;
        for i in 0..100 {
            let q = upper_gamma_reg(a, 0.2 * i as f64, &cfg()).unwrap();
            assert!(q <= prev + 1e-15, "a = {a}, step {i}");
            assert!((0.0..=1.0).contains(&q));
            prev = q;
        }
    }
}

#[test]
fn single_precision_instantiation() {
    let c = humbertq::EvalConfig32::default();
    let v = bessel_i(0.5_f32, 1.0, &c).unwrap();
    assert!((v - 0.937_674_9).abs() < 1e-5);
    assert!((upper_gamma_reg(1.0_f32, 2.0, &c).unwrap() - (-2.0_f32).exp()).abs() < 1e-6);
}

proptest! {
    #[test]
    fn incomplete_gamma_halves_sum_to_one(a in 0.05f64..40.0, x in 0.0f64..80.0) {
        let p = lower_gamma_reg(a, x, &cfg()).unwrap();
        let q = upper_gamma_reg(a, x, &cfg()).unwrap();
        prop_assert!((p + q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bessel_recurrence_holds(nu in 0.0f64..6.0, x in 0.05f64..30.0) {
        // I_{ν−1} − I_{ν+1} = (2ν/x) I_ν
        let lhs = bessel_i(nu - 1.0, x, &cfg()).unwrap() - bessel_i(nu + 1.0, x, &cfg()).unwrap();
        let rhs = 2.0 * nu / x * bessel_i(nu, x, &cfg()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (lhs.abs() + bessel_i(nu - 1.0, x, &cfg()).unwrap().abs()));
    }

    #[test]
    fn kummer_transform_agrees(s in -3.0f64..3.0, q in 0.3f64..4.0, w in -20.0f64..20.0) {
        let d = hyp1f1_direct(s, q, w, &cfg()).unwrap();
        let k = hyp1f1_kummer(s, q, w, &cfg()).unwrap();
        prop_assert!((d - k).abs() <= 1e-10 * d.abs().max(k.abs()) + 1e-12);
    }

    #[test]
    fn gamma_functional_equation(x in 0.1f64..30.0) {
        let lhs = ln_gamma(x + 1.0).unwrap().ln_abs;
        let rhs = ln_gamma(x).unwrap().ln_abs + x.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }
}
