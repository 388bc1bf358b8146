//! Lattice checks of the closed forms against identities, quadrature and
//! simulation. Each check reports its worst deviation over the lattice.

use rayon::prelude::*;

use crate::config::EvalConfig;
use crate::error::Result;
use crate::fading::{
    detection_closed_form, detection_probability_kappa_mu, kappa_mu_cdf, outage_monte_carlo, outage_probability,
    threshold_from_pf, DetectionParams, InterferenceScenario, KappaMuParams,
};
use crate::hyp2var::{
    phi3, phi3_bessel_expansion, phi3_reg_negint_b, psi2, psi2_reg_corollary1, psi2_reg_corollary2, Phi3Args, Psi2Args,
};
use crate::laplace::{in_dispatch, in_plus_n_marcum, in_plus_n_quadrature, LaplaceParams};
use crate::marcum::{
    marcum_p, marcum_phi3_m_lt_2, marcum_q, marcum_recurrence_rhs, marcum_scaled_laguerre, one_minus_q_lemma2,
    SignedSquareArg,
};
use crate::oracle::{quad_detection, quad_in, quad_kappa_mu_cdf, quad_marcum, sample_kappa_mu};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::{gamma, lower_gamma_reg};

type Cfg = EvalConfig<f64>;

/// Outcome of one lattice check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Largest deviation seen (relative, absolute or in standard errors,
    /// depending on the check).
    pub max_deviation: f64,
    pub tolerance: f64,
    pub points: usize,
    /// First evaluation error, if any point failed to evaluate.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_deviation <= self.tolerance
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<44} max_dev={:.3e} tol={:.1e} points={}",
            self.name, self.max_deviation, self.tolerance, self.points
        )?;
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Oracle,
    MonteCarlo,
    All,
}

fn rel(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

/// Evaluates `dev` over `points` in parallel and keeps the worst case.
fn lattice<P, F>(name: &'static str, tolerance: f64, points: Vec<P>, dev: F) -> Check
where
    P: Send + Sync + std::fmt::Debug,
    F: Fn(&P) -> Result<f64> + Sync,
{
    let results: Vec<(f64, Option<String>)> = points
        .par_iter()
        .map(|p| match dev(p) {
            Ok(d) if d.is_nan() => (f64::INFINITY, Some(format!("NaN deviation at {p:?}"))),
            Ok(d) => (d, None),
            Err(e) => (f64::INFINITY, Some(format!("{e} at {p:?}"))),
        })
        .collect();
    let max_deviation = results.iter().fold(0.0_f64, |m, r| m.max(r.0));
    Check {
        name,
        max_deviation,
        tolerance,
        points: points.len(),
        error: results.into_iter().find_map(|r| r.1),
    }
}

fn grid2<A: Copy, B: Copy>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn grid3<A: Copy, B: Copy, C: Copy>(a: &[A], b: &[B], c: &[C]) -> Vec<(A, B, C)> {
    grid2(a, b)
        .into_iter()
        .flat_map(|(x, y)| c.iter().map(move |&z| (x, y, z)))
        .collect()
}

fn grid4<A: Copy, B: Copy, C: Copy, D: Copy>(a: &[A], b: &[B], c: &[C], d: &[D]) -> Vec<(A, B, C, D)> {
    grid3(a, b, c)
        .into_iter()
        .flat_map(|(x, y, z)| d.iter().map(move |&w| (x, y, z, w)))
        .collect()
}

fn sq(x: f64) -> SignedSquareArg<f64> {
    SignedSquareArg::new(x)
}

/// The transform lattice: α², β² ∈ {¼, 1, 4}, c ∈ {½, 3/2, 3},
/// p ∈ {½, 1, 2}, μ₂ ∈ {½, 1, 2}, μ₁ − μ₂ ∈ {−2, …, 3}.
pub fn transform_lattice() -> Vec<[f64; 6]> {
    let mut out = Vec::new();
    for &a2 in &[0.25, 1.0, 4.0] {
        for &b2 in &[0.25, 1.0, 4.0] {
            for &c in &[0.5, 1.5, 3.0] {
                for &p in &[0.5, 1.0, 2.0] {
                    for &mu2 in &[0.5, 1.0, 2.0] {
                        for n in -2..=3 {
                            out.push([a2, b2, c, p, mu2 + n as f64, mu2]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Dispatcher against quadrature of the defining integral, rel 1e-6.
pub fn transform_grid(cfg: &Cfg) -> Check {
    lattice(
        "transform grid: dispatch vs quadrature",
        1e-6,
        transform_lattice(),
        |x| {
            let params = LaplaceParams::new(x[0], x[1], x[2], x[3], x[4], x[5])?;
            Ok(rel(in_dispatch(&params, cfg)?.value, quad_in(&params, cfg)?.value))
        },
    )
}

/// The two μ₁ = μ₂ + n routes against each other, rel 1e-8.
pub fn route_crosscheck(cfg: &Cfg) -> Check {
    let pts = grid4(&[0.25, 1.0, 4.0], &[0.25, 1.0, 4.0], &[0.5, 3.0], &[1usize, 2, 3]);
    let pts = grid3(&pts, &[0.5, 2.0], &[0.5, 1.0, 2.0]);
    lattice(
        "transform n>0: marcum vs proper-integral",
        1e-8,
        pts,
        |&((a2, b2, c, n), p, mu2)| {
            let params = LaplaceParams::new(a2, b2, c, p, mu2 + n as f64, mu2)?;
            Ok(rel(
                in_plus_n_marcum(&params, cfg)?,
                in_plus_n_quadrature(&params, cfg)?,
            ))
        },
    )
}

const MARCUM_ARGS: [f64; 4] = [0.3, 1.2, 4.0, 9.0];

/// Recurrence, reflection, both Φ₃ relations and the quadrature oracle.
pub fn marcum_identities(cfg: &Cfg) -> Vec<Check> {
    let args = grid2(&MARCUM_ARGS, &MARCUM_ARGS);
    vec![
        lattice(
            "marcum recurrence",
            1e-9,
            grid3(&[-1.5, 0.5, 1.0, 2.7], &[1usize, 2, 4], &args),
            |&(m, n, (a2, b2))| {
                let rhs = marcum_recurrence_rhs(m, n, sq(a2), sq(b2), cfg)?;
                Ok((rhs - marcum_q(m + n as f64, sq(a2), sq(b2), cfg)?).abs())
            },
        ),
        lattice(
            "marcum reflection",
            1e-9,
            grid2(&[1i64, 2, 3, 5], &args),
            |&(m, (a2, b2))| {
                // 1 − Q_{1−M}(β, α) from the Laguerre series, Q_M from the Poisson sums
                let order = (1 - m) as f64;
                let complement = (a2 / 2.0).powf(order) * marcum_scaled_laguerre(order, b2, a2, cfg)?;
                Ok((marcum_q(m as f64, sq(a2), sq(b2), cfg)? - complement).abs())
            },
        ),
        lattice(
            "marcum phi3 relation, integer order",
            1e-9,
            grid2(&[-2.0, -1.0, 0.0, 1.0], &args),
            |&(m, (a2, b2))| Ok((marcum_phi3_m_lt_2(m, a2, b2, cfg)? - marcum_q(m, sq(a2), sq(b2), cfg)?).abs()),
        ),
        lattice(
            "marcum phi3 relation, real order",
            1e-9,
            grid2(&[-0.5, 0.5, 1.5, 2.7], &args),
            |&(m, (a2, b2))| Ok((one_minus_q_lemma2(m, a2, b2, cfg)? - marcum_p(m, sq(a2), sq(b2), cfg)?).abs()),
        ),
        lattice(
            "marcum vs quadrature",
            1e-8,
            grid3(&[0.5, 1.0, 1.7, 3.0], &[0.0, 0.5, 2.0, 6.0], &[0.3, 1.0, 4.0, 9.0]),
            |&(m, a2, b2)| {
                Ok(rel(
                    marcum_q(m, sq(a2), sq(b2), cfg)?,
                    quad_marcum(m, a2, b2, cfg)?.value,
                ))
            },
        ),
    ]
}

/// Two-variable hypergeometric identities.
pub fn hypergeometric_identities(cfg: &Cfg) -> Vec<Check> {
    let wz = grid2(&[0.2, 0.8, 1.5], &[0.2, 0.8, 1.5]);
    let laplace_check = lattice(
        "phi3 laplace transform",
        1e-7,
        vec![(1.2, 1.8, 0.5, 0.3, 2.0)],
        |&(b, g, s, w, p)| {
            let opts = QuadOptions::new(1e-14, 1e-11).with_initial_panels(8);
            let f = |t: f64| -> Result<f64> {
                if t == 0.0 {
                    return Ok(0.0);
                }
                Ok((-p * t).exp()
                    * t.powf(g - 1.0)
                    * phi3(
                        Phi3Args {
                            b,
                            g,
                            w: s * t,
                            z: w * t,
                        },
                        cfg,
                    )?)
            };
            let numeric = integrate(f, 0.0, 40.0, &opts)?.value;
            let exact = gamma(g)? * p.powf(b - g) * (p - s).powf(-b) * (w / p).exp();
            Ok(rel(numeric, exact))
        },
    );
    vec![
        lattice(
            "psi2(a;d,a) = e^{w+z} phi3",
            1e-9,
            grid3(&[0.5, 1.3, 2.7], &[0.5, 1.3, 2.7], &wz),
            |&(a, d, (w, z))| {
                let lhs = psi2(Psi2Args { a, d, d2: a, w, z }, cfg)?;
                let rhs = (w + z).exp()
                    * phi3(
                        Phi3Args {
                            b: d - a,
                            g: d,
                            w: -w,
                            z: w * z,
                        },
                        cfg,
                    )?;
                Ok(rel(lhs, rhs))
            },
        ),
        lattice(
            "phi3 bessel expansion",
            1e-9,
            grid3(
                &[-1.5, 1.0, 2.2],
                &[0.6, 1.5, 3.1],
                &grid2(&[-0.7, 0.4, 1.3], &[0.3, 1.1, 2.5]),
            ),
            |&(b, g, (z, w))| {
                Ok(rel(
                    phi3_bessel_expansion(b, g, z, w, cfg)?,
                    phi3(Phi3Args { b, g, w: z, z: w }, cfg)?,
                ))
            },
        ),
        lattice(
            "regularized phi3, negative integer b",
            1e-10,
            grid3(
                &[1usize, 2, 3],
                &[0.7, 1.5, 2.5],
                &grid2(&[-0.4, 0.3, 0.7], &[0.5, 0.9, 2.0]),
            ),
            |&(k, g, (s, w))| {
                let direct = phi3(
                    Phi3Args {
                        b: -(k as f64),
                        g,
                        w: s,
                        z: w,
                    },
                    cfg,
                )? / gamma(g)?;
                Ok(rel(phi3_reg_negint_b(k, g, s, w, cfg)?, direct))
            },
        ),
        lattice(
            "psi2 via modified marcum",
            1e-8,
            grid3(&[0.7, 1.5, 2.3], &[1usize, 2, 3], &grid2(&[0.3, 1.1], &[0.2, 0.5])),
            |&(a, n, (w, z))| {
                let d = a + n as f64;
                let direct = psi2(Psi2Args { a, d, d2: a, w, z }, cfg)? / gamma(d)?;
                Ok(rel(psi2_reg_corollary1(a, n, w, z, cfg)?, direct))
            },
        ),
        lattice(
            "psi2 via bessel sum",
            1e-8,
            grid3(&[0.7, 1.8, 2.3], &[1usize, 2, 3], &grid2(&[0.3, 0.9], &[0.3, 1.4])),
            |&(a, n, (w, z))| {
                let an = a + n as f64;
                let direct = psi2(
                    Psi2Args {
                        a: an,
                        d: a,
                        d2: an,
                        w,
                        z,
                    },
                    cfg,
                )? / gamma(a)?;
                Ok(rel(psi2_reg_corollary2(a, n, w, z, cfg)?, direct))
            },
        ),
        laplace_check,
    ]
}

/// Imaginary-argument Marcum values and the Ψ₂ relation built on them.
pub fn modified_marcum(cfg: &Cfg) -> Vec<Check> {
    let s = [-4.0, -2.0, -1.0, -0.5, -0.25];
    let half = [2.0, 1.0, 0.5, 0.25, 0.125];
    vec![
        lattice(
            "modified marcum finite on s in [-4,-1/4]^2",
            0.0,
            grid3(&[-0.5, 0.5, 1.0, 2.0, 2.5], &s, &s),
            |&(m, a2, b2)| {
                let q = marcum_q(m, sq(a2), sq(b2), cfg)?;
                let c = marcum_scaled_laguerre(m, a2, b2, cfg)?;
                Ok(if q.is_finite() && c.is_finite() {
                    0.0
                } else {
                    f64::INFINITY
                })
            },
        ),
        lattice(
            "psi2 via modified marcum, imaginary lattice",
            1e-8,
            grid4(&[0.7, 1.5], &[1usize, 2, 3], &half, &half),
            |&(a, n, w, z)| {
                let d = a + n as f64;
                let direct = psi2(Psi2Args { a, d, d2: a, w, z }, cfg)? / gamma(d)?;
                Ok(rel(psi2_reg_corollary1(a, n, w, z, cfg)?, direct))
            },
        ),
    ]
}

/// CDF against integrated density, normalization, and the Nakagami and
/// Rice special cases.
pub fn distribution_consistency(cfg: &Cfg) -> Vec<Check> {
    let km = grid2(&[0.5, 1.0, 2.5], &[0.5, 1.0, 2.0]);
    vec![
        lattice(
            "cdf vs integrated pdf",
            1e-8,
            grid2(&km, &[0.3, 1.0, 3.0]),
            |&((k, m), z)| {
                let params = KappaMuParams::new(k, m, 1.0)?;
                Ok(rel(
                    kappa_mu_cdf(&params, z, cfg)?,
                    quad_kappa_mu_cdf(&params, z, cfg)?.value,
                ))
            },
        ),
        lattice(
            "pdf normalization",
            1e-8,
            grid2(&km, &[0.5, 1.0, 4.0]),
            |&((k, m), omega)| {
                let params = KappaMuParams::new(k, m, omega)?;
                Ok((quad_kappa_mu_cdf(&params, f64::INFINITY, cfg)?.value - 1.0).abs())
            },
        ),
        lattice(
            "nakagami limit (kappa = 1e-9)",
            1e-6,
            grid3(&[1.0, 2.0, 3.0], &[0.2, 1.0, 3.0], &[1.0, 2.0]),
            |&(m, z, omega)| {
                let params = KappaMuParams::new(1e-9, m, omega)?;
                Ok((kappa_mu_cdf(&params, z, cfg)? - lower_gamma_reg(m, m * z / omega, cfg)?).abs())
            },
        ),
        lattice(
            "rice case (mu = 1)",
            1e-6,
            grid2(&[0.5, 2.5, 6.0], &[0.2, 1.0, 3.0]),
            |&(k, z)| {
                let params = KappaMuParams::new(k, 1.0, 1.0)?;
                let first_order = 1.0 - quad_marcum(1.0, 2.0 * k, 2.0 * (1.0 + k) * z, cfg)?.value;
                Ok((kappa_mu_cdf(&params, z, cfg)? - first_order).abs())
            },
        ),
    ]
}

pub const OUTAGE_SIR_DB: [f64; 5] = [0.0, 5.0, 10.0, 15.0, 20.0];
pub const OUTAGE_KAPPA_S: [f64; 2] = [0.5, 2.5];
const MC_TRIALS: usize = 1_000_000;
const MC_SEED: u64 = 20_240_917;

/// Outage closed form against simulation, and the shape of the curves.
pub fn outage_application(cfg: &Cfg) -> Vec<Check> {
    let pts = grid2(&OUTAGE_KAPPA_S, &OUTAGE_SIR_DB);
    let rows: Vec<Result<(f64, f64, f64)>> = pts
        .par_iter()
        .map(|&(ks, sir)| {
            let sc = InterferenceScenario {
                soi: KappaMuParams::new(ks, 2.0, 1.0)?,
                cci: KappaMuParams::new(0.5, 2.0, 1.0)?,
            };
            let closed = outage_probability(&sc, sir, 1.0, cfg)?.value;
            let mc = outage_monte_carlo(&sc, sir, 1.0, MC_TRIALS, MC_SEED)?;
            Ok((closed, mc.estimate, mc.stderr))
        })
        .collect();
    let mut rows_ok = Vec::new();
    let mut error = None;
    for r in rows {
        match r {
            Ok(v) => rows_ok.push(v),
            Err(e) => error = error.or(Some(e.to_string())),
        }
    }
    if let Some(e) = error {
        return vec![Check {
            name: "outage closed form vs monte carlo (sigma)",
            max_deviation: f64::INFINITY,
            tolerance: 3.0,
            points: pts.len(),
            error: Some(e),
        }];
    }
    let n_sir = OUTAGE_SIR_DB.len();
    let sigma = rows_ok
        .iter()
        .map(|&(c, m, s)| (c - m).abs() / s.max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    let mut non_monotone = 0;
    let mut misordered = 0;
    for (i, row) in rows_ok.iter().enumerate() {
        if i % n_sir > 0 {
            let prev = rows_ok[i - 1];
            non_monotone += usize::from(row.0 >= prev.0) + usize::from(row.1 > prev.1);
        }
        if i >= n_sir {
            // κ_S = 2.5 against κ_S = 0.5 at the same SIR, by simulation
            misordered += usize::from(row.1 >= rows_ok[i - n_sir].1);
        }
    }
    let count_check = |name, dev: usize, points| Check {
        name,
        max_deviation: dev as f64,
        tolerance: 0.0,
        points,
        error: None,
    };
    vec![
        Check {
            name: "outage closed form vs monte carlo (sigma)",
            max_deviation: sigma,
            tolerance: 3.0,
            points: rows_ok.len(),
            error: None,
        },
        count_check("outage decreasing in SIR (violations)", non_monotone, rows_ok.len()),
        count_check("outage lower for stronger LOS (violations)", misordered, n_sir),
    ]
}

pub const DETECTION_OMEGA_DB: [f64; 13] = [
    -10.0, -7.5, -5.0, -2.5, 0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0,
];

/// Detection closed form against averaging by quadrature, the zero-SNR
/// limit and the threshold inversion.
pub fn detection_application(cfg: &Cfg) -> Vec<Check> {
    let (u, mu, pf) = (2.5, 0.5, 0.1);
    vec![
        lattice(
            "detection closed form vs quadrature",
            1e-6,
            grid2(&[0.5, 4.2], &DETECTION_OMEGA_DB),
            |&(k, omega_db)| {
                let ch = KappaMuParams::new(k, mu, 10f64.powf(omega_db / 10.0))?;
                let d = DetectionParams::from_pf(u, pf, ch, cfg)?;
                Ok(rel(
                    detection_closed_form(&d, cfg)?.value,
                    quad_detection(u, d.lambda, &ch, cfg)?.value,
                ))
            },
        ),
        lattice("detection -> pf as omega -> 0", 1e-4, vec![0.5, 4.2], |&k| {
            let d = DetectionParams::from_pf(u, pf, KappaMuParams::new(k, mu, 1e-8)?, cfg)?;
            Ok((detection_probability_kappa_mu(&d, cfg)?.value - pf).abs())
        }),
        lattice("threshold lambda(1, 0.1) = -2 ln 0.1", 1e-9, vec![()], |_| {
            Ok((threshold_from_pf(1.0, 0.1, cfg)? + 2.0 * 0.1_f64.ln()).abs())
        }),
    ]
}

/// Sampler mean and empirical CDFs.
pub fn sampler_checks(cfg: &Cfg) -> Vec<Check> {
    let dkw = |n: usize| ((2.0_f64 / 0.01).ln() / (2.0 * n as f64)).sqrt();
    let ecdf_sup =
        |params: KappaMuParams<f64>, n: usize, seed: u64, cdf: &(dyn Fn(f64) -> Result<f64> + Sync)| -> Result<f64> {
            let mut xs: Vec<f64> = sample_kappa_mu(&params, n, seed)?.collect();
            xs.sort_by(f64::total_cmp);
            let sups: Result<Vec<f64>> = xs
                .par_iter()
                .enumerate()
                .map(|(i, &x)| {
                    let f = cdf(x)?;
                    Ok((f - i as f64 / n as f64)
                        .abs()
                        .max((f - (i + 1) as f64 / n as f64).abs()))
                })
                .collect();
            Ok(sups?.into_iter().fold(0.0, f64::max) / dkw(n))
        };
    vec![
        lattice("sampler mean (sigma)", 3.0, vec![(0.5, 2.0, 1.0)], |&(k, m, o)| {
            let n = MC_TRIALS;
            let xs: Vec<f64> = sample_kappa_mu(&KappaMuParams::new(k, m, o)?, n, MC_SEED)?.collect();
            let mean = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
            Ok((mean - o).abs() / (var / n as f64).sqrt())
        }),
        lattice("sampler rayleigh limit (DKW units)", 1.0, vec![1e-9], |&k| {
            ecdf_sup(KappaMuParams::new(k, 1.0, 1.0)?, 100_000, MC_SEED, &|x| {
                Ok(1.0 - (-x).exp())
            })
        }),
        lattice(
            "sampler vs kappa-mu cdf (DKW units)",
            1.0,
            vec![(2.5, 2.0), (0.5, 1.0)],
            |&(k, m)| {
                let params = KappaMuParams::new(k, m, 1.0)?;
                ecdf_sup(params, 100_000, MC_SEED + 1, &|x| kappa_mu_cdf(&params, x, cfg))
            },
        ),
    ]
}

/// Runs a suite and returns every check in order.
pub fn run_suite(suite: Suite, cfg: &Cfg) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(marcum_identities(cfg));
        out.extend(hypergeometric_identities(cfg));
        out.extend(modified_marcum(cfg));
        out.push(route_crosscheck(cfg));
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        out.push(transform_grid(cfg));
        out.extend(distribution_consistency(cfg));
        out.extend(detection_application(cfg));
    }
    if matches!(suite, Suite::MonteCarlo | Suite::All) {
        out.extend(outage_application(cfg));
        out.extend(sampler_checks(cfg));
    }
    out
}
