//! Command-line surface: compute coefficient tables, predict spectra, run
//! the shooting solver, and run verification suites.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage/parse error,
//! 3 numerical failure.

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;
use std::path::PathBuf;

use pt_spectra::error::Error;
use pt_spectra::expansion::{bender_constant_check, depth, predict, ExpansionTable};
use pt_spectra::parse::{parse_coeff_list, parse_config, RunConfig};
use pt_spectra::potential::{branch_pow, Potential};
use pt_spectra::quadrature::{k_mj, l_numeric};
use pt_spectra::report::{complex_json, fmt17, Manifest};
use pt_spectra::series::{compute_b, compute_bjk, compute_mu_nu};
use pt_spectra::shooting::{
    enumerate_eigenvalues, w01, w01_expected, Classification, EnumerationOutcome,
};

#[derive(Parser)]
#[command(name = "pt-spectra", version, about = "Asymptotic expansions and shooting spectra of PT-symmetric polynomial oscillators")]
struct Cli {
    /// Degree m of the polynomial potential (m >= 3)
    #[arg(short, global = true)]
    m: Option<usize>,
    /// Coefficients a_1,...,a_{m-1} as comma-separated complex literals
    /// re[+im i]; defaults to all zeros
    #[arg(short, global = true)]
    a: Option<String>,
    /// Config file with key=value overrides
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for the generated report files
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Thread cap for concurrent sections (0 = auto); defaults to
    /// PT_SPECTRA_THREADS
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the full coefficient ladder (b, b_{j,k}, mu, nu, K, c, d, e)
    Coeffs {
        /// Truncation order for the b table (default m)
        #[arg(long)]
        order: Option<usize>,
        /// Also emit a flat CSV of the table
        #[arg(long)]
        csv: bool,
    },
    /// Predicted eigenvalues from the asymptotic machinery
    Predict {
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// expansion | quantization | both
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Locate eigenvalues with the shooting solver and compare
    Solve {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Run a verification suite
    Verify {
        /// wronskian | reality | monotonic | residual | bender | Lexpansion
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidDegree(_) | Error::BadCoeffCount { .. } => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> i32 {
    let m = match cli.m {
        Some(m) => m,
        None => {
            eprintln!("error: -m <degree> is required");
            return 2;
        }
    };
    let a = match &cli.a {
        Some(s) => match parse_coeff_list(s) {
            Ok(v) => v,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        None => vec![Complex64::new(0.0, 0.0); m.saturating_sub(1)],
    };
    let p = match Potential::new(m, a) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 2;
            }
        };
        if let Err(e) = parse_config(&text, &mut cfg) {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("PT_SPECTRA_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);

    let result = match &cli.cmd {
        Cmd::Coeffs { order, csv } => cmd_coeffs(&p, &cfg, &cli.out_dir, *order, *csv),
        Cmd::Predict {
            n_min,
            n_max,
            method,
        } => cmd_predict(&p, &cfg, &cli.out_dir, *n_min, *n_max, method),
        Cmd::Solve { n_max } => cmd_solve(&p, &cfg, &cli.out_dir, *n_max, threads),
        Cmd::Verify { suite, n_max } => {
            return match cmd_verify(&p, &cfg, suite, *n_max, threads) {
                Ok(pass) => {
                    if pass {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code(&e)
                }
            }
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn write_output(dir: &PathBuf, name: &str, content: &str) -> Result<(), Error> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_coeffs(
    p: &Potential,
    cfg: &RunConfig,
    out_dir: &PathBuf,
    order: Option<usize>,
    csv: bool,
) -> Result<(), Error> {
    let m = p.degree();
    let big_j = order.unwrap_or(m).clamp(1, m);
    let manifest = Manifest::new("coeffs", m, p.coeffs(), cfg);
    let b = compute_b(p, big_j)?;
    let mn = compute_mu_nu(p)?;
    let table = ExpansionTable::build(p, &cfg.quad)?;
    let jmax = depth(m);
    let bjk: Vec<Vec<Complex64>> = (1..=jmax)
        .map(|j| compute_bjk(p, j))
        .collect::<Result<_, _>>()?;

    let doc = json!({
        "manifest": manifest.json_value(),
        "m": m,
        "a": p.coeffs().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
        "b_const": b.iter().map(|x| complex_json(x.const_part)).collect::<Vec<_>>(),
        "b_lambda": b.iter().map(|x| complex_json(x.lambda_part)).collect::<Vec<_>>(),
        "bjk": bjk.iter().map(|row| row.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "mu": complex_json(mn.mu),
        "nu": complex_json(mn.nu),
        "r_m": complex_json(mn.r_m),
        "K_m": table.km,
        "K_mj_plus": table.kmj_plus.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
        "K_mj_minus": table.kmj_minus.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
        "c": table.c.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
        "d": table.d.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
        "e": table.e.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
    });
    let pretty = serde_json::to_string_pretty(&doc).expect("serializable");
    println!("{pretty}");
    write_output(out_dir, &format!("{}.json", manifest.file_stem()), &pretty)?;

    if csv {
        let mut out = manifest.csv_header();
        out.push_str("name,index,re,im\n");
        let mut row = |name: &str, idx: usize, z: Complex64| {
            out.push_str(&format!("{name},{idx},{},{}\n", fmt17(z.re), fmt17(z.im)));
        };
        for (i, x) in b.iter().enumerate() {
            row("b_const", i + 1, x.const_part);
            row("b_lambda", i + 1, x.lambda_part);
        }
        row("mu", 0, mn.mu);
        row("nu", 0, mn.nu);
        row("K_m", 0, Complex64::new(table.km, 0.0));
        for (i, &z) in table.c.iter().enumerate() {
            row("c", i + 1, z);
        }
        for (i, &z) in table.d.iter().enumerate() {
            row("d", i + 1, z);
        }
        for (i, &z) in table.e.iter().enumerate() {
            row("e", i + 1, z);
        }
        write_output(out_dir, &format!("{}.csv", manifest.file_stem()), &out)?;
    }
    Ok(())
}

fn cmd_predict(
    p: &Potential,
    cfg: &RunConfig,
    out_dir: &PathBuf,
    n_min: usize,
    n_max: usize,
    method: &str,
) -> Result<(), Error> {
    if !matches!(method, "expansion" | "quantization" | "both") {
        return Err(Error::Parse(format!("unknown method {method:?}")));
    }
    let m = p.degree();
    let manifest = Manifest::new("predict", m, p.coeffs(), cfg);
    let table = ExpansionTable::build(p, &cfg.quad)?;
    let mut out = manifest.csv_header();
    match method {
        "expansion" => out.push_str("n,lambda0,exp_re,exp_im\n"),
        "quantization" => out.push_str("n,lambda0,quant_re,quant_im\n"),
        _ => out.push_str("n,lambda0,exp_re,exp_im,quant_re,quant_im,gap_norm\n"),
    }
    for n in n_min..=n_max {
        let pr = predict(&table, n)?;
        match method {
            "expansion" => out.push_str(&format!(
                "{n},{},{},{}\n",
                fmt17(pr.lambda0),
                fmt17(pr.lambda_expansion.re),
                fmt17(pr.lambda_expansion.im)
            )),
            "quantization" => out.push_str(&format!(
                "{n},{},{},{}\n",
                fmt17(pr.lambda0),
                fmt17(pr.lambda_quantization.re),
                fmt17(pr.lambda_quantization.im)
            )),
            _ => out.push_str(&format!(
                "{n},{},{},{},{},{},{}\n",
                fmt17(pr.lambda0),
                fmt17(pr.lambda_expansion.re),
                fmt17(pr.lambda_expansion.im),
                fmt17(pr.lambda_quantization.re),
                fmt17(pr.lambda_quantization.im),
                fmt17(
                    (pr.lambda_expansion - pr.lambda_quantization).norm() / pr.error_scale
                )
            )),
        }
    }
    print!("{out}");
    write_output(out_dir, &format!("{}.csv", manifest.file_stem()), &out)
}

fn cmd_solve(
    p: &Potential,
    cfg: &RunConfig,
    out_dir: &PathBuf,
    n_max: usize,
    threads: usize,
) -> Result<(), Error> {
    let m = p.degree();
    let manifest = Manifest::new("solve", m, p.coeffs(), cfg);
    let table = ExpansionTable::build(p, &cfg.quad)?;
    let out_come = enumerate_eigenvalues(p, &table, n_max, &cfg.shoot, threads)?;
    let mut out = manifest.csv_header();
    out.push_str("n,pred_re,pred_im,shoot_re,shoot_im,residual,classification,det_at_root\n");
    for r in &out_come.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            fmt17(r.lambda_pred.re),
            fmt17(r.lambda_pred.im),
            fmt17(r.lambda_shoot.re),
            fmt17(r.lambda_shoot.im),
            fmt17(r.residual),
            r.classification.as_str(),
            fmt17(r.det_at_root)
        ));
    }
    for (n, why) in &out_come.failures {
        out.push_str(&format!("# failed n={n}: {why}\n"));
    }
    print!("{out}");
    write_output(out_dir, &format!("{}.csv", manifest.file_stem()), &out)
}

fn report_check(label: &str, measured: f64, bound: f64) -> bool {
    let pass = measured <= bound;
    println!(
        "{label}: measured {measured:.3e}, bound {bound:.3e} -> {}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn solve_records(
    p: &Potential,
    cfg: &RunConfig,
    n_max: usize,
    threads: usize,
) -> Result<EnumerationOutcome, Error> {
    let table = ExpansionTable::build(p, &cfg.quad)?;
    enumerate_eigenvalues(p, &table, n_max, &cfg.shoot, threads)
}

fn cmd_verify(
    p: &Potential,
    cfg: &RunConfig,
    suite: &str,
    n_max: usize,
    threads: usize,
) -> Result<bool, Error> {
    let m = p.degree();
    match suite {
        "bender" => {
            let r = bender_constant_check(m)?;
            Ok(report_check("bender constant ratio |r-1|", (r - 1.0).abs(), 1e-12))
        }
        "wronskian" => {
            let expect = w01_expected(p)?;
            let mut pass = true;
            for lam in [1.0, 10.0, 100.0] {
                let got = w01(p, Complex64::new(lam, 0.0), &cfg.shoot)?;
                pass &= report_check(
                    &format!("W01 deviation at lambda={lam}"),
                    (got / expect - 1.0).norm(),
                    1e-6,
                );
            }
            Ok(pass)
        }
        "reality" => {
            let out = solve_records(p, cfg, n_max, threads)?;
            let nonreal = out
                .records
                .iter()
                .filter(|r| {
                    !matches!(
                        r.classification,
                        Classification::RealPositive | Classification::RealNonpositive
                    )
                })
                .count();
            for (n, why) in &out.failures {
                println!("note: index {n} failed: {why}");
            }
            Ok(report_check("non-real root count", nonreal as f64, 0.0)
                && report_check("failed index count", out.failures.len() as f64, 0.0))
        }
        "monotonic" => {
            let out = solve_records(p, cfg, n_max, threads)?;
            let mags: Vec<f64> = out.records.iter().map(|r| r.lambda_shoot.norm()).collect();
            let mut n0 = 0usize;
            for i in 1..mags.len() {
                if mags[i] <= mags[i - 1] {
                    n0 = i;
                }
            }
            println!("monotone from index {n0} of {}", mags.len());
            Ok(report_check(
                "first monotone index",
                n0 as f64,
                (n_max / 2) as f64,
            ))
        }
        "residual" => {
            let out = solve_records(p, cfg, n_max, threads)?;
            let res: Vec<f64> = out.records.iter().map(|r| r.residual).collect();
            if res.len() < 8 {
                return Err(Error::NoConvergence(res.len()));
            }
            let median = |s: &[f64]| -> f64 {
                let mut v = s.to_vec();
                v.sort_by(|a, b| a.partial_cmp(b).unwrap());
                v[v.len() / 2]
            };
            let n = res.len();
            let hi = median(&res[n / 2..]);
            let lo = median(&res[n / 4..n / 2]);
            Ok(report_check("upper-half/lower-quarter median ratio", hi / lo, 1.0))
        }
        "Lexpansion" => {
            let jmax = depth(m);
            let kmj: Vec<Complex64> = (1..=jmax)
                .map(|j| k_mj(p, j, &cfg.quad))
                .collect::<Result<_, _>>()?;
            let km = pt_spectra::quadrature::k_m_closed(m)?;
            let b_top = compute_b(p, m / 2 + 1)?[m / 2].const_part;
            let resid = |lam: f64| -> Result<f64, Error> {
                let l = l_numeric(p, Complex64::new(lam, 0.0), &cfg.quad)?;
                let mut s =
                    Complex64::new(km, 0.0) * branch_pow(Complex64::new(lam, 0.0), 0.5 + 1.0 / m as f64)?;
                for (idx, &k) in kmj.iter().enumerate() {
                    s += k * branch_pow(
                        Complex64::new(lam, 0.0),
                        0.5 + (1.0 - (idx as f64 + 1.0)) / m as f64,
                    )?;
                }
                if m % 2 == 0 {
                    s -= b_top / m as f64 * lam.ln();
                }
                Ok((l - s).norm())
            };
            let rate = if m % 2 == 1 {
                -1.0 / (2.0 * m as f64)
            } else {
                -1.0 / m as f64
            };
            let r1 = resid(1e3)?;
            let r2 = resid(2e3)?;
            let r3 = resid(4e3)?;
            println!("residuals at 1e3, 2e3, 4e3: {r1:.3e} {r2:.3e} {r3:.3e}");
            let bound = 2.0 * 2f64.powf(rate);
            Ok(report_check("ratio r(2e3)/r(1e3)", r2 / r1, bound)
                && report_check("ratio r(4e3)/r(2e3)", r3 / r2, bound))
        }
        _ => Err(Error::Parse(format!("unknown suite {suite:?}"))),
    }
}
