//! Command-line front end: single transform evaluations, outage and
//! detection sweeps as CSV, and the self-verification suites.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use humbertq::fading::{
    detection_probability_kappa_mu, outage_monte_carlo, outage_probability, threshold_from_pf, DetectionParams,
    InterferenceScenario, KappaMuParams,
};
use humbertq::oracle::quad_in;
use humbertq::selftest::{run_suite, Suite};
use humbertq::specfun::upper_gamma_reg;
use humbertq::{in_dispatch, EvalConfig64, LaplaceParams};
use rayon::prelude::*;

const VERIFY_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "humbertq",
    version,
    about = "Marcum-Q Laplace transforms and kappa-mu fading curves"
)]
struct Cli {
    /// Cross-check the two closed forms for mu1 = mu2 + n when both apply.
    #[arg(long, global = true)]
    paranoid: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the transform at one parameter point.
    Laplace(LaplaceArgs),
    /// Outage probability under co-channel interference, as CSV.
    Outage(OutageArgs),
    /// Energy-detection probability over kappa-mu fading, as CSV.
    Detect(DetectArgs),
    /// Run a verification suite; exit 1 if any check fails.
    Selftest {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Args)]
struct LaplaceArgs {
    /// alpha^2; negative means imaginary alpha.
    #[arg(long, allow_hyphen_values = true)]
    a2: f64,
    /// beta^2; negative means imaginary beta.
    #[arg(long, allow_hyphen_values = true)]
    b2: f64,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    mu1: f64,
    #[arg(long, allow_hyphen_values = true)]
    mu2: f64,
    /// Also integrate numerically and report the relative deviation.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct Sweep {
    #[arg(long, allow_hyphen_values = true)]
    start: f64,
    #[arg(long, allow_hyphen_values = true)]
    stop: f64,
    #[arg(long, default_value_t = 11)]
    points: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutageVariable {
    SirDb,
    Z,
}

#[derive(Args)]
struct OutageArgs {
    #[arg(long)]
    kappa_s: f64,
    #[arg(long)]
    mu_s: f64,
    #[arg(long)]
    kappa_i: f64,
    #[arg(long)]
    mu_i: f64,
    /// Swept variable.
    #[arg(long, value_enum, default_value = "sir-db")]
    sweep: OutageVariable,
    /// Outage threshold on the power ratio (when SIR is swept).
    #[arg(long, default_value_t = 1.0)]
    z: f64,
    /// SIR in dB (when z is swept).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    sir_db: f64,
    /// Add a simulated estimate with this many trials per point.
    #[arg(long)]
    monte_carlo: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    range: Sweep,
}

#[derive(Args)]
struct DetectArgs {
    /// Time-bandwidth product.
    #[arg(long)]
    u: f64,
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    kappa: f64,
    /// Target false-alarm probability.
    #[arg(long)]
    pf: f64,
    /// Mean SNR sweep in dB.
    #[command(flatten)]
    range: Sweep,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Oracle,
    Montecarlo,
    All,
}

/// Failure classes mapped onto the exit-code contract.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<humbertq::Error> for Failure {
    fn from(e: humbertq::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn sweep_points(s: &Sweep) -> Result<Vec<f64>, Failure> {
    if s.points < 2 || !(s.start < s.stop) {
        return Err(Failure::Usage(format!(
            "sweep needs points >= 2 and start < stop, got points = {}, start = {}, stop = {}",
            s.points, s.start, s.stop
        )));
    }
    let step = (s.stop - s.start) / (s.points - 1) as f64;
    Ok((0..s.points)
        .map(|i| {
            if i + 1 == s.points {
                s.stop
            } else {
                s.start + step * i as f64
            }
        })
        .collect())
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_laplace(a: &LaplaceArgs, cfg: &EvalConfig64) -> Result<(), Failure> {
    let params = LaplaceParams::new(a.a2, a.b2, a.c, a.p, a.mu1, a.mu2)?;
    let v = in_dispatch(&params, cfg)?;
    println!("value={}", num(v.value));
    println!("path={}", v.path);
    if a.verify {
        let oracle = quad_in(&params, cfg)?;
        let dev = ((v.value - oracle.value) / oracle.value).abs();
        println!("oracle={}", num(oracle.value));
        println!("rel_dev={dev:.3e}");
        if !(dev < VERIFY_TOL) {
            return Err(Failure::Verification(format!(
                "relative deviation {dev:e} exceeds {VERIFY_TOL:e}"
            )));
        }
    }
    Ok(())
}

fn cmd_outage(a: &OutageArgs, cfg: &EvalConfig64) -> Result<(), Failure> {
    let scenario = InterferenceScenario {
        soi: KappaMuParams::new(a.kappa_s, a.mu_s, 1.0)?,
        cci: KappaMuParams::new(a.kappa_i, a.mu_i, 1.0)?,
    };
    let xs = sweep_points(&a.range)?;
    let at = |x: f64| match a.sweep {
        OutageVariable::SirDb => (x, a.z),
        OutageVariable::Z => (a.sir_db, x),
    };
    let rows: Vec<Result<String, Failure>> = xs
        .par_iter()
        .map(|&x| {
            let (sir, z) = at(x);
            let v = outage_probability(&scenario, sir, z, cfg)?;
            let mut row = format!("{},{},{}", num(x), num(v.value), v.path);
            if let Some(trials) = a.monte_carlo {
                let mc = outage_monte_carlo(&scenario, sir, z, trials, a.seed)?;
                row.push_str(&format!(",{},{}", num(mc.estimate), num(mc.stderr)));
            }
            Ok(row)
        })
        .collect();
    let mut out = sink(&a.range.output)?;
    let first = match a.sweep {
        OutageVariable::SirDb => "sir_db",
        OutageVariable::Z => "z",
    };
    let extra = if a.monte_carlo.is_some() {
        ",mc_estimate,mc_stderr"
    } else {
        ""
    };
    writeln!(out, "{first},p_out,method{extra}")?;
    for row in rows {
        writeln!(out, "{}", row?)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_detect(a: &DetectArgs, cfg: &EvalConfig64) -> Result<(), Failure> {
    // validate the channel shape once; Ω is set per row
    KappaMuParams::new(a.kappa, a.mu, 1.0)?;
    let xs = sweep_points(&a.range)?;
    let lambda = threshold_from_pf(a.u, a.pf, cfg)?;
    let pf_check = upper_gamma_reg(a.u, lambda / 2.0, cfg)?;
    eprintln!("lambda={} pf_check={}", num(lambda), num(pf_check));
    let rows: Vec<Result<String, Failure>> = xs
        .par_iter()
        .map(|&db| {
            let ch = KappaMuParams::new(a.kappa, a.mu, 10f64.powf(db / 10.0))?;
            let v = detection_probability_kappa_mu(&DetectionParams::new(a.u, lambda, ch)?, cfg)?;
            Ok(format!("{},{},{}", num(db), num(v.value), v.path))
        })
        .collect();
    let mut out = sink(&a.range.output)?;
    writeln!(out, "omega_db,p_d,method")?;
    for row in rows {
        writeln!(out, "{}", row?)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_selftest(suite: SuiteArg, cfg: &EvalConfig64) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Montecarlo => Suite::MonteCarlo,
        SuiteArg::All => Suite::All,
    };
    let checks = run_suite(suite, cfg);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    println!("{} checks, {failed} failed", checks.len());
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match EvalConfig64::from_env() {
        Ok(c) => c.paranoid(cli.paranoid),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Laplace(a) => cmd_laplace(a, &cfg),
        Command::Outage(a) => cmd_outage(a, &cfg),
        Command::Detect(a) => cmd_detect(a, &cfg),
        Command::Selftest { suite } => cmd_selftest(*suite, &cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
