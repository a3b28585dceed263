use std::fs;
use std::path::Path;

use apline_core::almost_periodic::{
    ball_grid, joint_translation_set, translation_defect, translation_set, verify_schottky,
};
use apline_core::bohr::{abscissa_l, bohr_coefficient, bohr_spectrum, tail_bound, AbscissaOptions};
use apline_core::composition::{
    check_compact, check_compact_subspace, classify_bounded, sublevel_uniform_continuity,
    ScanControls, Symbol,
};
use apline_core::halfplane::{line_scan, step_for_slack, LineWindow};
use apline_core::io::{
    parse_family, parse_polynomial, parse_symbol, write_defect_curve, write_distance_matrix,
    write_line_scan, write_sweep,
};
use apline_core::montel::{
    distance_matrix, exponential_separation, joint_ap_dichotomy, ExtractionControls, FamilySpec,
};
use apline_core::riesz::{poisson_smooth_check, riesz_error_sweep, riesz_mean, SweepControls};
use apline_core::{certified_sup_norm, Artifact, Error, GDPolynomial, HalfPlaneGrid};
use num_complex::Complex64;
use serde_json::json;

use crate::args::{Cli, Command, Format, Output, Scan};

#[derive(Debug)]
pub struct Failure {
    pub parse: bool,
    pub code: String,
    pub message: String,
}

impl Failure {
    pub fn numeric(code: &str, message: impl Into<String>) -> Self {
        Failure {
            parse: false,
            code: code.into(),
            message: message.into(),
        }
    }

    fn input(code: &str, message: impl Into<String>) -> Self {
        Failure {
            parse: true,
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.parse {
            "InputParse"
        } else {
            "NumericPrecondition"
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            parse: e.is_parse_error(),
            code: e.code().into(),
            message: e.to_string(),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::input("Io", format!("{}: {e}", path.display())))
}

fn load_poly(path: &Path) -> Result<GDPolynomial> {
    Ok(parse_polynomial(&read(path)?)?)
}

fn load_symbol(path: &Path) -> Result<Symbol> {
    Ok(parse_symbol(&read(path)?)?)
}

fn write_text(out: &Output, text: &[u8]) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::numeric("Io", format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text)
                .map_err(|e| Failure::numeric("Io", e.to_string()))
        }
    }
}

fn emit_json(out: &Output, json: String) -> Result<()> {
    if out.format == Format::Csv {
        return Err(Failure::numeric(
            "FormatUnavailable",
            "this subcommand only produces JSON",
        ));
    }
    write_text(out, format!("{json}\n").as_bytes())
}

/// JSON, or the CSV table produced by `csv` when `--format csv`.
fn emit(
    out: &Output,
    json: impl FnOnce() -> String,
    csv: impl FnOnce(&mut Vec<u8>) -> apline_core::Result<()>,
) -> Result<()> {
    match out.format {
        Format::Json => write_text(out, format!("{}\n", json()).as_bytes()),
        Format::Csv => {
            let mut buf = Vec::new();
            csv(&mut buf)?;
            write_text(out, &buf)
        }
    }
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("values are finite")
}

fn scan_step(scan: &Scan, p: &GDPolynomial) -> f64 {
    scan.step
        .unwrap_or_else(|| step_for_slack(p, scan.kappa, scan.slack))
}

fn scan_step_family(scan: &Scan, family: &[GDPolynomial]) -> f64 {
    scan.step.unwrap_or_else(|| {
        let lip = family
            .iter()
            .map(|f| f.lipschitz_bound(scan.kappa))
            .fold(0.0, f64::max);
        if lip > 0.0 {
            2.0 * scan.slack / lip
        } else {
            1.0
        }
    })
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!(x)
    } else {
        serde_json::Value::Null
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let out = &cli.output;
    match &cli.command {
        Command::Eval { poly, s } => {
            let v = load_poly(poly)?.evaluate(*s)?;
            emit_json(
                out,
                pretty(json!({ "re": v.re, "im": v.im, "abs": v.norm() })),
            )
        }
        Command::Norm { poly, scan } => {
            let p = load_poly(poly)?;
            let step = scan_step(scan, &p);
            let e = certified_sup_norm(&p, scan.kappa, scan.window, step)?;
            emit(
                out,
                || e.to_json(),
                |buf| {
                    let samples =
                        line_scan(&p, scan.kappa, LineWindow::symmetric(scan.window)?, step)?;
                    write_line_scan(buf, &samples)
                },
            )
        }
        Command::TranslateSet {
            poly,
            epsilon,
            scan,
        } => {
            let p = load_poly(poly)?;
            let step = scan_step(scan, &p);
            let r = translation_set(&p, *epsilon, scan.kappa, scan.window, step)?;
            emit(
                out,
                || r.to_json(),
                |buf| {
                    let n = (scan.window / step + 1e-9).floor() as usize;
                    let curve: Vec<(f64, f64)> = (0..=n)
                        .map(|j| {
                            let tau = j as f64 * step;
                            (tau, translation_defect(&p, tau, scan.kappa))
                        })
                        .collect();
                    write_defect_curve(buf, &curve)
                },
            )
        }
        Command::JointSet {
            family,
            epsilon,
            scales,
            scan,
        } => {
            let fam = parse_family(&read(family)?)?;
            let step = scan_step_family(scan, &fam);
            let r = joint_translation_set(
                &fam,
                *epsilon,
                scan.kappa,
                scan.window,
                step,
                scales.as_deref(),
            )?;
            emit_json(out, r.to_json())
        }
        Command::Bohr {
            poly,
            lambda,
            sigma,
            t,
        } => {
            let b = bohr_coefficient(&load_poly(poly)?, *lambda, *sigma, *t)?;
            emit_json(out, b.to_json())
        }
        Command::Spectrum {
            poly,
            candidates,
            sigma,
            t,
            threshold,
        } => {
            let r = bohr_spectrum(&load_poly(poly)?, candidates, *sigma, *t, *threshold)?;
            emit_json(out, r.to_json())
        }
        Command::Abscissa {
            lambdas,
            cap,
            kappa,
            n_cut,
        } => {
            let lambdas: Vec<f64> = serde_json::from_str(&read(lambdas)?)
                .map_err(|e| Failure::input("Malformed", e.to_string()))?;
            let l = abscissa_l(&lambdas, AbscissaOptions { cap: *cap })?;
            let mut doc = json!({ "abscissa": finite_or_null(l), "divergent": !l.is_finite(), "n": lambdas.len() });
            if let Some(k) = kappa {
                doc["kappa"] = json!(k);
                doc["n_cut"] = json!(n_cut);
                doc["tail_bound"] = json!(tail_bound(&lambdas, *k, *n_cut)?);
            }
            emit_json(out, pretty(doc))
        }
        Command::Riesz { poly, omega } => {
            let r = riesz_mean(&load_poly(poly)?, *omega)?;
            emit_json(out, r.to_json())
        }
        Command::RieszSweep {
            poly,
            kappa,
            omegas,
            window,
            slack,
        } => {
            let controls = SweepControls {
                half_width: *window,
                slack: *slack,
            };
            let s = riesz_error_sweep(&load_poly(poly)?, *kappa, omegas, controls)?;
            emit(out, || s.to_json(), |buf| write_sweep(buf, &s))
        }
        Command::PoissonCheck {
            poly,
            kappa,
            sigma,
            t,
            budget,
        } => {
            let c = poisson_smooth_check(&load_poly(poly)?, *kappa, *sigma, *t, *budget)?;
            emit_json(out, c.to_json())
        }
        Command::Schottky {
            poly,
            center,
            r,
            radial,
            angular,
        } => {
            let p = load_poly(poly)?;
            if !(*r > 0.0 && center.re - r >= 0.0) {
                return Err(Failure::numeric(
                    "NumericPrecondition",
                    format!("ball of radius {r} around {center} leaves the closed half-plane"),
                ));
            }
            let f = |s: Complex64| -> Result<Complex64> { Ok(p.evaluate(s)?.exp()) };
            let pts = ball_grid(*center, *r, *radial, *angular);
            let samples = pts[1..]
                .iter()
                .map(|&s| Ok((s, f(s)?)))
                .collect::<Result<Vec<_>>>()?;
            let c = verify_schottky(&samples, *center, f(*center)?, *r)?;
            emit_json(out, c.to_json())
        }
        Command::Classify { symbol, window } => {
            let v = classify_bounded(&load_symbol(symbol)?, controls(*window))?;
            emit_json(out, v.to_json())
        }
        Command::Compact { symbol, window } => {
            let v = check_compact(&load_symbol(symbol)?, controls(*window))?;
            emit_json(out, v.to_json())
        }
        Command::CompactSubspace { symbol, window } => {
            let v = check_compact_subspace(&load_symbol(symbol)?, controls(*window))?;
            emit_json(out, v.to_json())
        }
        Command::Algebra {
            symbol,
            r,
            deltas,
            epsilons,
            sigma_max,
            window,
            n_sigma,
            n_t,
        } => {
            let phi = load_symbol(symbol)?;
            let grid = HalfPlaneGrid::new(0.0, *sigma_max, -window, *window, *n_sigma, *n_t)?;
            let u = sublevel_uniform_continuity(&phi, *r, deltas, epsilons, &grid)?;
            emit_json(out, u.verdict.to_json())
        }
        Command::Montel {
            family,
            epsilon,
            scan,
        } => {
            let spec = FamilySpec::from_json(&read(family)?)?;
            let fam = spec.generate()?;
            let step = scan_step_family(scan, &fam);
            let r = joint_ap_dichotomy(
                &fam,
                *epsilon,
                scan.kappa,
                scan.window,
                step,
                ExtractionControls::default(),
            )?;
            emit(
                out,
                || r.to_json(),
                |buf| write_distance_matrix(buf, &distance_matrix(&fam, scan.kappa)),
            )
        }
        Command::Counterexample {
            lambda_n,
            lambda,
            kappa,
        } => {
            let g = apline_core::montel::counterexample_gap(*lambda_n, *lambda, *kappa)?;
            emit_json(out, g.to_json())
        }
        Command::Separation { lambdas, kappa } => {
            let m = exponential_separation(lambdas, *kappa)?;
            emit(
                out,
                || pretty(json!(m)),
                |buf| write_distance_matrix(buf, &m),
            )
        }
    }
}

fn controls(window: f64) -> ScanControls {
    ScanControls {
        half_width: window,
        ..ScanControls::default()
    }
}
