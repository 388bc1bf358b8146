use approx::assert_relative_eq;
use humbertq::hyp2var::*;
use humbertq::specfun::{bessel_i, gamma, hyp1f1};
use humbertq::{Error, EvalConfig64};
use proptest::prelude::*;

fn cfg() -> EvalConfig64 {
    EvalConfig64::default()
}

fn phi3v(b: f64, g: f64, w: f64, z: f64) -> f64 {
    phi3(Phi3Args { b, g, w, z }, &cfg()).unwrap()
}

fn psi2v(a: f64, d: f64, d2: f64, w: f64, z: f64) -> f64 {
    psi2(Psi2Args { a, d, d2, w, z }, &cfg()).unwrap()
}

#[test]
fn phi3_values() {
    assert_eq!(phi3v(1.3, 0.7, 0.0, 0.0), 1.0);
    assert_relative_eq!(
        phi3v(1.2, 2.4, 0.8, 0.0),
        hyp1f1(1.2, 2.4, 0.8, &cfg()).unwrap(),
        max_relative = 1e-14
    );
    // mpmath double series, 30 digits
    assert_relative_eq!(
        phi3v(1.0, 2.5, 1.1, 0.9),
        2.191_901_206_788_367_785_9,
        max_relative = 1e-13
    );
    assert!(matches!(
        phi3(
            Phi3Args {
                b: 1.0,
                g: -1.0,
                w: 0.2,
                z: 0.1
            },
            &cfg()
        ),
        Err(Error::Pole { .. })
    ));
}

#[test]
fn psi2_values() {
    assert_eq!(psi2v(0.4, 1.1, 2.0, 0.0, 0.0), 1.0);
    let via_phi3 = 1.0_f64.exp() * phi3v(1.0, 2.5, -0.6, 0.24);
    assert_relative_eq!(psi2v(1.5, 2.5, 1.5, 0.6, 0.4), via_phi3, max_relative = 1e-13);
    // mpmath double series
    assert_relative_eq!(
        psi2v(0.8, 1.7, 2.9, 0.5, 1.2),
        2.116_641_796_541_025_513,
        max_relative = 1e-13
    );
    assert!(psi2(
        Psi2Args {
            a: 1.0,
            d: 0.0,
            d2: 1.0,
            w: 0.1,
            z: 0.1
        },
        &cfg()
    )
    .is_err());
}

#[test]
fn regularized_phi3_with_negative_integer_b() {
    assert_relative_eq!(
        phi3_reg_negint_b(1, 2.0, 0.0, 1.0, &cfg()).unwrap(),
        bessel_i(1.0, 2.0, &cfg()).unwrap(),
        max_relative = 1e-14
    );
    // mpmath: Φ₃(−2; 1.5; 0.7, 0.9)/Γ(1.5)
    assert_relative_eq!(
        phi3_reg_negint_b(2, 1.5, 0.7, 0.9, &cfg()).unwrap(),
        0.643_195_828_664_730_821_05,
        max_relative = 1e-13
    );
    // finite at the pole g = 0 and continuous there
    let at_pole = phi3_reg_negint_b(1, 0.0, 0.7, 0.9, &cfg()).unwrap();
    let g = 1e-6;
    let near = phi3v(-1.0, g, 0.7, 0.9) / gamma(g).unwrap();
    assert!(at_pole.is_finite());
    assert!((at_pole - near).abs() < 1e-5);
    let routed = phi3_regularized(
        Phi3Args {
            b: -1.0,
            g: 0.0,
            w: 0.7,
            z: 0.9,
        },
        &cfg(),
    )
    .unwrap();
    assert_relative_eq!(routed, at_pole, max_relative = 1e-14);
}

#[test]
fn delta_coefficients() {
    for (g, w, z) in [(0.4, 1.3, 2.0), (3.0, -0.7, 0.2)] {
        assert_eq!(delta_coeff(0, 1, g, w, z).unwrap(), 1.0);
    }
    assert_relative_eq!(delta_coeff(0, 3, 2.0, 2.0, 4.0).unwrap(), 2.0, max_relative = 1e-15);
    // explicit finite sum in exact arithmetic
    assert_relative_eq!(delta_coeff(2, 2, 1.5, 0.5, 0.8).unwrap(), 2.0, max_relative = 1e-14);
    assert!(delta_coeff(3, 2, 1.5, 0.5, 0.8).is_err());
    assert!(matches!(
        delta_coeff(1, 2, 1.5, 0.0, 0.8),
        Err(Error::DivisionByZero { .. })
    ));
}

#[test]
fn psi2_through_marcum_terms() {
    let e1 = 1.0_f64.exp() * phi3v(1.0, 2.5, -0.6, 0.24) / gamma(2.5).unwrap();
    assert_relative_eq!(
        psi2_reg_corollary1(1.5, 1, 0.6, 0.4, &cfg()).unwrap(),
        e1,
        max_relative = 1e-12
    );
    let z0 = hyp1f1(2.0, 3.0, 0.3, &cfg()).unwrap() / gamma(3.0).unwrap();
    assert_relative_eq!(
        psi2_reg_corollary1(2.0, 1, 0.3, 0.0, &cfg()).unwrap(),
        z0,
        max_relative = 1e-12
    );
    // mpmath: Ψ₂(0.7; 2.7, 0.7; 1.1, 0.5)/Γ(2.7)
    assert_relative_eq!(
        psi2_reg_corollary1(0.7, 2, 1.1, 0.5, &cfg()).unwrap(),
        1.872_993_614_223_311_385_4,
        max_relative = 1e-12
    );
}

#[test]
fn psi2_through_bessel_sums() {
    let (i0, i1) = (bessel_i(0.0, 1.0, &cfg()).unwrap(), bessel_i(1.0, 1.0, &cfg()).unwrap());
    assert_relative_eq!(
        psi2_reg_corollary2(1.0, 1, 0.5, 0.5, &cfg()).unwrap(),
        std::f64::consts::E * (i0 + i1),
        max_relative = 1e-14
    );
    // mpmath: Ψ₂(3.8; 1.8, 3.8; 0.9, 0.3)/Γ(1.8)
    assert_relative_eq!(
        psi2_reg_corollary2(1.8, 2, 0.9, 0.3, &cfg()).unwrap(),
        8.661_488_396_538_620_556,
        max_relative = 1e-13
    );
    let at_pole = psi2_reg_corollary2(0.0, 1, 0.4, 0.6, &cfg()).unwrap();
    let near = psi2_reg_corollary2(1e-6, 1, 0.4, 0.6, &cfg()).unwrap();
    assert!(at_pole.is_finite() && (at_pole - near).abs() < 1e-5);
}

#[test]
fn regularized_psi2_routes_near_poles() {
    // d = a + n with a at a pole: only the finite-sum form is defined
    let v = psi2_regularized(
        Psi2Args {
            a: 0.0,
            d: 1.0,
            d2: 0.0,
            w: 0.5,
            z: 0.3,
        },
        &cfg(),
    )
    .unwrap();
    let limit = psi2_regularized(
        Psi2Args {
            a: 1e-7,
            d: 1.0 + 1e-7,
            d2: 1e-7,
            w: 0.5,
            z: 0.3,
        },
        &cfg(),
    )
    .unwrap();
    assert!(v.is_finite());
    assert!((v - limit).abs() < 1e-5);
}

#[test]
fn psi2_phi3_lattice() {
    for a in [0.5, 1.3, 2.7] {
        for d in [0.5, 1.3, 2.7] {
            for w in [0.2, 0.8, 1.5] {
                for z in [0.2, 0.8, 1.5] {
                    let lhs = psi2v(a, d, a, w, z);
                    let rhs = (w + z).exp() * phi3v(d - a, d, -w, w * z);
                    assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
                }
            }
        }
    }
}

#[test]
fn bessel_expansion_lattice() {
    for b in [-1.5, 1.0, 2.2] {
        for g in [0.6, 1.5, 3.1] {
            for (z, w) in [(-0.7, 0.3), (0.4, 1.1), (1.3, 2.5)] {
                let expanded = phi3_bessel_expansion(b, g, z, w, &cfg()).unwrap();
                assert_relative_eq!(expanded, phi3v(b, g, z, w), max_relative = 1e-9);
            }
        }
    }
}

proptest! {
    #[test]
    fn corollaries_match_double_series(a in 0.2f64..3.0, n in 1usize..4, w in 0.05f64..2.0, z in 0.05f64..2.0) {
        let d = a + n as f64;
        let direct1 = psi2v(a, d, a, w, z) / gamma(d).unwrap();
        let c1 = psi2_reg_corollary1(a, n, w, z, &cfg()).unwrap();
        prop_assert!((c1 - direct1).abs() <= 1e-8 * direct1.abs());
        let direct2 = psi2v(d, a, d, w, z) / gamma(a).unwrap();
        let c2 = psi2_reg_corollary2(a, n, w, z, &cfg()).unwrap();
        prop_assert!((c2 - direct2).abs() <= 1e-8 * direct2.abs());
    }

    #[test]
    fn phi3_is_positive_for_positive_parameters(b in 0.0f64..4.0, g in 0.1f64..4.0, w in 0.0f64..3.0, z in 0.0f64..3.0) {
        prop_assert!(phi3v(b, g, w, z) >= 1.0);
    }
}
