use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_humbertq"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key}= in {text}"))
}

#[test]
fn laplace_prints_value_and_route() {
    let o = run(&[
        "laplace", "--a2", "1", "--b2", "2", "--c", "1.5", "--p", "0.8", "--mu1", "1.7", "--mu2", "1.7",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let v: f64 = field(&out, "value").parse().unwrap();
    assert!((v - 2.033_497_567_737_407).abs() < 1e-12);
    assert_eq!(field(&out, "path"), "equal-orders");
}

#[test]
fn laplace_alpha_zero_equal_orders() {
    let o = run(&[
        "laplace", "--a2", "0", "--b2", "1", "--c", "1", "--p", "1", "--mu1", "2", "--mu2", "2",
    ]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "path"), "equal-orders");
}

#[test]
fn laplace_verify() {
    let o = run(&[
        "laplace", "--a2", "2", "--b2", "0.8", "--c", "1.2", "--p", "0.6", "--mu1", "4", "--mu2", "1", "--verify",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "path"), "marcum");
    let dev: f64 = field(&out, "rel_dev").parse().unwrap();
    assert!(dev < 1e-6);
    field(&out, "oracle");
}

#[test]
fn laplace_negative_squares_and_paranoid() {
    let o = run(&[
        "laplace", "--a2", "-0.5", "--b2", "1", "--c", "1", "--p", "1", "--mu1", "2", "--mu2", "1",
    ]);
    assert!(o.status.success());
    let o = run(&[
        "--paranoid",
        "laplace",
        "--a2",
        "1.2",
        "--b2",
        "0.9",
        "--c",
        "0.8",
        "--p",
        "0.7",
        "--mu1",
        "3.5",
        "--mu2",
        "1.5",
    ]);
    assert!(o.status.success());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec![
            "laplace", "--a2", "1", "--b2", "1", "--c", "1", "--p", "1", "--mu1", "1.3", "--mu2", "1",
        ],
        vec![
            "laplace", "--a2", "1", "--b2", "1", "--c", "1", "--p", "-1", "--mu1", "1", "--mu2", "1",
        ],
        vec![
            "outage",
            "--kappa-s",
            "1",
            "--mu-s",
            "1.5",
            "--kappa-i",
            "1",
            "--mu-i",
            "1",
            "--start",
            "0",
            "--stop",
            "10",
        ],
        vec![
            "detect", "--u", "2", "--mu", "1", "--kappa", "1", "--pf", "1.5", "--start", "0", "--stop", "10",
        ],
        vec![
            "detect", "--u", "2", "--mu", "1", "--kappa", "1", "--pf", "0.1", "--start", "5", "--stop", "0",
        ],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn outage_sweep_csv() {
    let o = run(&[
        "outage",
        "--kappa-s",
        "0.5",
        "--mu-s",
        "2",
        "--kappa-i",
        "0.5",
        "--mu-i",
        "2",
        "--start",
        "0",
        "--stop",
        "20",
        "--points",
        "5",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "sir_db,p_out,method");
    assert_eq!(lines.len(), 6);
    let row: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(row[0].parse::<f64>().unwrap(), 10.0);
    assert!((row[1].parse::<f64>().unwrap() - 0.019_828_816_174_000_403).abs() < 1e-14);
    assert_eq!(row[2], "bessel-sum");
    let ps: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(ps.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn outage_z_sweep_with_simulation() {
    let o = run(&[
        "outage",
        "--kappa-s",
        "1",
        "--mu-s",
        "1",
        "--kappa-i",
        "1",
        "--mu-i",
        "2",
        "--sweep",
        "z",
        "--sir-db",
        "3",
        "--start",
        "0.5",
        "--stop",
        "2",
        "--points",
        "3",
        "--monte-carlo",
        "20000",
        "--seed",
        "5",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "z,p_out,method,mc_estimate,mc_stderr");
    for l in lines {
        let f: Vec<f64> = l
            .split(',')
            .enumerate()
            .filter(|(i, _)| *i != 2)
            .map(|(_, s)| s.parse().unwrap())
            .collect();
        assert!((f[1] - f[2]).abs() < 5.0 * f[3]);
    }
}

#[test]
fn outage_to_file() {
    let path = std::env::temp_dir().join(format!("humbertq-cli-{}.csv", std::process::id()));
    let o = run(&[
        "outage",
        "--kappa-s",
        "1",
        "--mu-s",
        "1",
        "--kappa-i",
        "1",
        "--mu-i",
        "1",
        "--start",
        "0",
        "--stop",
        "1",
        "--points",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn detect_sweep_csv() {
    let o = run(&[
        "detect", "--u", "2.5", "--mu", "0.5", "--kappa", "0.5", "--pf", "0.1", "--start", "0", "--stop", "10",
        "--points", "3",
    ]);
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    let line = err.lines().find(|l| l.starts_with("lambda=")).unwrap();
    let pf: f64 = line.split("pf_check=").nth(1).unwrap().trim().parse().unwrap();
    assert!((pf - 0.1).abs() < 1e-12);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "omega_db,p_d,method");
    let last: Vec<&str> = lines[3].split(',').collect();
    assert!((last[1].parse::<f64>().unwrap() - 0.647_069_802_332_937).abs() < 1e-10);
    assert_eq!(last[2], "marcum");
}

#[test]
fn detect_non_integer_offset_falls_back() {
    let o = run(&[
        "detect", "--u", "2.2", "--mu", "1", "--kappa", "1", "--pf", "0.1", "--start", "0", "--stop", "5", "--points",
        "2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",quadrature-fallback")));
}

#[test]
fn term_cap_from_environment() {
    let args = [
        "laplace", "--a2", "1", "--b2", "2", "--c", "1.5", "--p", "0.8", "--mu1", "1.7", "--mu2", "1.7",
    ];
    let bad = Command::new(env!("CARGO_BIN_EXE_humbertq"))
        .args(args)
        .env("HUMBERTQ_MAX_TERMS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let tiny = Command::new(env!("CARGO_BIN_EXE_humbertq"))
        .args(args)
        .env("HUMBERTQ_MAX_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(tiny.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&tiny.stderr).contains("max_terms"));
    let ok = Command::new(env!("CARGO_BIN_EXE_humbertq"))
        .args(args)
        .env("HUMBERTQ_MAX_TERMS", "5000")
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn identities_selftest() {
    let o = run(&["selftest", "identities"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().last().unwrap().ends_with("0 failed"));
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
}
