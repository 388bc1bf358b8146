use approx::assert_relative_eq;
use humbertq::laplace::*;
use humbertq::marcum::SignedSquareArg;
use humbertq::oracle::quad_in;
use humbertq::{marcum_q, Error, EvalConfig64, LaplaceParams64, MethodPath};
use proptest::prelude::*;

fn cfg() -> EvalConfig64 {
    EvalConfig64::default()
}

fn params(a2: f64, b2: f64, c: f64, p: f64, mu1: f64, mu2: f64) -> LaplaceParams64 {
    LaplaceParams::new(a2, b2, c, p, mu1, mu2).unwrap()
}

fn eval(a2: f64, b2: f64, c: f64, p: f64, mu1: f64, mu2: f64) -> LaplaceValue<f64> {
    in_dispatch(&params(a2, b2, c, p, mu1, mu2), &cfg()).unwrap()
}

#[test]
fn reference_values() {
    // (a2, b2, c, p, mu1, mu2, value, route); values by 30-digit quadrature of the defining integral
    let cases = [
        (
            1.0,
            2.0,
            1.5,
            0.8,
            1.7,
            1.7,
            2.033_497_567_737_407_46,
            MethodPath::EqualOrders,
        ),
        (
            1.0,
            1.0,
            1.0,
            1.0,
            1.5,
            0.5,
            1.532_902_602_773_825_35,
            MethodPath::Marcum,
        ),
        (
            2.0,
            0.8,
            1.2,
            0.6,
            4.0,
            1.0,
            3.036_218_490_396_280_951,
            MethodPath::Marcum,
        ),
        (
            0.5,
            2.0,
            2.0,
            1.5,
            4.0,
            2.0,
            0.853_867_519_097_875_646,
            MethodPath::Marcum,
        ),
        (
            1.0,
            1.5,
            1.0,
            1.0,
            1.0,
            3.0,
            0.255_889_884_869_345_643,
            MethodPath::BesselSum,
        ),
        (
            2.0,
            1.0,
            0.5,
            2.0,
            0.5,
            1.5,
            0.104_581_909_046_935_205,
            MethodPath::BesselSum,
        ),
    ];
    for (a2, b2, c, p, mu1, mu2, want, path) in cases {
        let v = eval(a2, b2, c, p, mu1, mu2);
        assert_eq!(v.path, path);
        assert_relative_eq!(v.value, want, max_relative = 1e-12);
    }
}

#[test]
fn bessel_power_transform() {
    assert_relative_eq!(
        laplace_bessel_power(2.5, 1.3, 0.7).unwrap(),
        2.337_505_685_038_029_203_9,
        max_relative = 1e-14
    );
    assert_relative_eq!(laplace_bessel_power(1.0, 0.0, 2.0).unwrap(), 0.5, max_relative = 1e-15);
    assert!(laplace_bessel_power(0.0, 1.0, 1.0).is_err());
}

#[test]
fn swapped_transform() {
    assert_relative_eq!(
        in_swapped_corollary3(1.0, 1.0, 1.0, 1.0, 2, 2, &cfg()).unwrap(),
        0.497_225_013_581_361_768,
        max_relative = 1e-12
    );
}

#[test]
fn alpha_zero_factors_out() {
    let v = eval(0.0, 1.2, 0.9, 0.7, 2.5, 1.5);
    assert_eq!(v.path, MethodPath::AlphaZero);
    let q = marcum_q(2.5, SignedSquareArg::new(0.0), SignedSquareArg::new(1.2), &cfg()).unwrap();
    assert_relative_eq!(
        v.value,
        q * laplace_bessel_power(1.5, 0.9, 0.7).unwrap(),
        max_relative = 1e-15
    );
    // equal orders win over the α = 0 shortcut
    assert_eq!(eval(0.0, 1.0, 1.0, 1.0, 2.0, 2.0).path, MethodPath::EqualOrders);
}

#[test]
fn beta_zero_gives_the_bessel_power_transform() {
    for (mu1, mu2) in [(1.5, 1.5), (3.0, 1.0), (2.0, 2.0)] {
        let v = eval(1.3, 0.0, 0.8, 0.9, mu1, mu2).value;
        assert_relative_eq!(v, laplace_bessel_power(mu2, 0.8, 0.9).unwrap(), max_relative = 1e-12);
    }
}

#[test]
fn errors() {
    let bad = params(1.0, 1.0, 1.0, 1.0, 1.3, 1.0);
    assert!(matches!(in_dispatch(&bad, &cfg()), Err(Error::NonIntegerOffset { .. })));
    assert!(LaplaceParams::new(1.0, 1.0, 1.0, 0.0, 1.0, 1.0).is_err());
    assert!(LaplaceParams::new(-3.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
    assert!(LaplaceParams::new(1.0, 1.0, -1.0, 1.0, 1.0, 1.0).is_err());
    assert!(LaplaceParams::new(f64::NAN, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
    let a0 = params(0.0, 1.0, 1.0, 1.0, 1.0, 2.0);
    assert!(matches!(in_minus_n(&a0, &cfg()), Err(Error::DivisionByZero { .. })));
    let c0 = params(1.0, 1.0, 0.0, 1.0, 1.0, 2.0);
    assert!(matches!(in_minus_n(&c0, &cfg()), Err(Error::DivisionByZero { .. })));
}

#[test]
fn imaginary_arguments() {
    // imaginary α with p̃ > 0 stays finite; the two n ≥ 1 routes need real arguments
    let v = eval(-0.5, 1.0, 1.0, 1.0, 2.0, 1.0);
    assert!(v.value.is_finite() && v.value > 0.0);
    let w = eval(1.0, -0.5, 1.0, 1.0, 2.0, 2.0);
    assert!(w.value.is_finite());
}

#[test]
fn paranoid_mode_agrees() {
    let cfg = cfg().paranoid(true);
    let p = params(1.2, 0.9, 0.8, 0.7, 3.5, 1.5);
    let v = in_dispatch(&p, &cfg).unwrap();
    assert_eq!(v.path, MethodPath::Marcum);
    assert_relative_eq!(in_plus_n_quadrature(&p, &cfg).unwrap(), v.value, max_relative = 1e-10);
}

#[test]
fn f32_instantiation() {
    let p = LaplaceParams::<f32>::new(1.0, 2.0, 1.5, 0.8, 1.7, 1.7).unwrap();
    let v = in_dispatch(&p, &humbertq::EvalConfig32::default()).unwrap();
    assert!((v.value - 2.033_497_6_f32).abs() < 1e-4);
}

proptest! {
    #[test]
    fn closed_forms_match_quadrature(
        a2 in 0.05f64..4.0, b2 in 0.0f64..4.0, c in 0.05f64..2.0, p in 0.3f64..2.0,
        mu2 in 0.5f64..3.0, n in -2i64..3,
    ) {
        let mu1 = mu2 + n as f64;
        prop_assume!(mu1 > 0.0);
        let pr = params(a2, b2, c, p, mu1, mu2);
        let v = in_dispatch(&pr, &cfg()).unwrap().value;
        let oracle = quad_in(&pr, &cfg()).unwrap().value;
        prop_assert!(v > 0.0);
        prop_assert!(((v - oracle) / oracle).abs() < 1e-7, "{} vs {}", v, oracle);
    }

    #[test]
    fn decreasing_in_beta(a2 in 0.05f64..4.0, b2 in 0.0f64..4.0, db in 0.05f64..2.0, mu2 in 0.5f64..3.0, n in -2i64..3) {
        let mu1 = mu2 + n as f64;
        prop_assume!(mu1 > 0.0);
        let lo = eval(a2, b2, 1.0, 1.0, mu1, mu2).value;
        let hi = eval(a2, b2 + db, 1.0, 1.0, mu1, mu2).value;
        prop_assert!(hi <= lo * (1.0 + 1e-12));
    }
}
