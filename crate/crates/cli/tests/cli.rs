use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use apline_core::composition::Verdict;
use apline_core::io::{read_defect_curve, read_distance_matrix, read_line_scan, read_sweep};
use apline_core::montel::DichotomyReport;
use apline_core::riesz::RieszSweep;
use apline_core::{Artifact, GDPolynomial, SupNormEnclosure};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn apline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apline"))
        .args(args)
        .env_remove("APLINE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "exit {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_doc(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr carries one JSON error document")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_at_half_turn_is_minus_one() {
    let f = fixture("exp1.json");
    let o = apline(&["eval", "--poly", path(&f), "--s", "0+3.14159265i"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["re"].as_f64().unwrap() + 1.0).abs() < 1e-8);
    assert!(v["im"].as_f64().unwrap().abs() < 1e-8);
}

#[test]
fn riesz_mean_keeps_weighted_low_term() {
    let f = fixture("two_term.json");
    let o = apline(&["riesz", "--poly", path(&f), "--omega", "1.5"]);
    let p = GDPolynomial::from_json(&stdout(&o)).unwrap();
    let terms: Vec<_> = p.terms().to_vec();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].lambda, 1.0);
    assert!((terms[0].coeff.re - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn compact_symbol_gets_yes() {
    let f = fixture("compact_symbol.json");
    let o = apline(&["compact", "--symbol", path(&f)]);
    let v = Verdict::from_json(&stdout(&o)).unwrap();
    assert!(v.answer);
}

#[test]
fn shifted_identity_is_bounded_but_not_compact() {
    let f = fixture("shifted_identity.json");
    let v = Verdict::from_json(&stdout(&apline(&["classify", "--symbol", path(&f)]))).unwrap();
    assert!(v.answer);
    let v = Verdict::from_json(&stdout(&apline(&["compact", "--symbol", path(&f)]))).unwrap();
    assert!(!v.answer);
}

#[test]
fn unknown_subcommand_exits_64() {
    let o = apline(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(64));
    assert_eq!(error_doc(&o)["error"], "UnknownSubcommand");
}

#[test]
fn decreasing_frequencies_exit_65() {
    let f = fixture("decreasing.json");
    let o = apline(&["eval", "--poly", path(&f), "--s", "1"]);
    assert_eq!(o.status.code(), Some(65));
    let e = error_doc(&o);
    assert_eq!(e["error"], "InputParse");
    assert_eq!(e["code"], "FrequencyOrder");
}

#[test]
fn non_analytic_symbol_is_rejected_at_parse() {
    let f = fixture("non_analytic_symbol.json");
    let o = apline(&["classify", "--symbol", path(&f)]);
    assert_eq!(o.status.code(), Some(65));
    assert_eq!(error_doc(&o)["error"], "InputParse");
}

#[test]
fn missing_file_and_bad_flag_value_exit_65() {
    let o = apline(&["eval", "--poly", "/nonexistent/p.json", "--s", "1"]);
    assert_eq!(o.status.code(), Some(65));
    let f = fixture("exp1.json");
    let o = apline(&["eval", "--poly", path(&f), "--s", "one"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn numeric_preconditions_exit_2() {
    let f = fixture("exp1.json");
    let o = apline(&["translate-set", "--poly", path(&f), "--epsilon=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_doc(&o)["error"], "NumericPrecondition");

    let o = apline(&["eval", "--poly", path(&f), "--s", "-1+0i"]);
    assert_eq!(o.status.code(), Some(2));

    let o = apline(&[
        "counterexample",
        "--lambda-n",
        "1",
        "--lambda",
        "1",
        "--kappa",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn csv_on_json_only_command_exits_2() {
    let f = fixture("exp1.json");
    let o = apline(&[
        "--format",
        "csv",
        "riesz",
        "--poly",
        path(&f),
        "--omega",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_doc(&o)["code"], "FormatUnavailable");
}

#[test]
fn thread_variable_must_be_positive() {
    let f = fixture("exp1.json");
    for bad in ["0", "-3", "many"] {
        let o = Command::new(env!("CARGO_BIN_EXE_apline"))
            .args(["eval", "--poly", path(&f), "--s", "1"])
            .env("APLINE_THREADS", bad)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(2), "APLINE_THREADS={bad}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_apline"))
        .args(["eval", "--poly", path(&f), "--s", "1"])
        .env("APLINE_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn montel_is_deterministic() {
    let f = fixture("shared_family.json");
    let args = [
        "montel",
        "--family",
        path(&f),
        "--epsilon",
        "0.5",
        "--kappa",
        "0.5",
        "--T",
        "50",
        "--step",
        "0.05",
    ];
    let a = stdout(&apline(&args));
    let b = stdout(&apline(&args));
    assert_eq!(a, b);
    let r = DichotomyReport::from_json(&a).unwrap();
    assert!(r.agreement);
    assert_eq!(r.extraction.indices.len(), 20);
}

#[test]
fn drifting_family_is_not_clustered() {
    let f = fixture("drifting_family.json");
    let o = apline(&[
        "montel",
        "--family",
        path(&f),
        "--epsilon",
        "0.3",
        "--kappa",
        "0.5",
        "--T",
        "50",
        "--step",
        "0.05",
    ]);
    let r = DichotomyReport::from_json(&stdout(&o)).unwrap();
    assert!(!r.jointly_ap && !r.clustered && r.agreement);
}

#[test]
fn out_flag_writes_reparseable_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("two_term.json");

    let norm = dir.path().join("norm.json");
    let o = apline(&[
        "--out",
        path(&norm),
        "norm",
        "--poly",
        path(&f),
        "--kappa",
        "0",
        "--T",
        "20",
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let e = SupNormEnclosure::from_json(&std::fs::read_to_string(&norm).unwrap()).unwrap();
    assert!(e.lower <= 2.0 && 2.0 <= e.upper);

    let sweep = dir.path().join("sweep.json");
    apline(&[
        "--out",
        path(&sweep),
        "riesz-sweep",
        "--poly",
        path(&f),
        "--kappa",
        "0.5",
        "--omegas",
        "1,2,3",
        "--T",
        "20",
    ]);
    let s = RieszSweep::from_json(&std::fs::read_to_string(&sweep).unwrap()).unwrap();
    assert_eq!(s.omegas.len(), 3);
}

#[test]
fn csv_outputs_parse_back() {
    let f = fixture("exp1.json");
    let scan = stdout(&apline(&[
        "--format",
        "csv",
        "norm",
        "--poly",
        path(&f),
        "--T",
        "1",
        "--step",
        "0.5",
    ]));
    assert!(scan.starts_with("t,re,im,abs"));
    assert_eq!(read_line_scan(scan.as_bytes()).unwrap().len(), 5);

    let curve = stdout(&apline(&[
        "--format",
        "csv",
        "translate-set",
        "--poly",
        path(&f),
        "--epsilon",
        "0.1",
        "--T",
        "1",
        "--step",
        "0.25",
    ]));
    assert!(curve.starts_with("tau,defect"));
    let c = read_defect_curve(curve.as_bytes()).unwrap();
    assert_eq!(c.len(), 5);
    assert_eq!(c[0], (0.0, 0.0));

    let two = fixture("two_term.json");
    let sweep = stdout(&apline(&[
        "--format",
        "csv",
        "riesz-sweep",
        "--poly",
        path(&two),
        "--kappa",
        "0.5",
        "--omegas",
        "1,2,3",
        "--T",
        "20",
    ]));
    assert!(sweep.starts_with("omega,err_lower,err_upper,bound"));
    assert_eq!(read_sweep(sweep.as_bytes()).unwrap().len(), 3);

    let sep = stdout(&apline(&[
        "--format",
        "csv",
        "separation",
        "--lambdas",
        "1,2,3",
        "--kappa",
        "0.5",
    ]));
    let m = read_distance_matrix(sep.as_bytes()).unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m[0][0], 0.0);
}

#[test]
fn every_json_subcommand_reparses() {
    let exp = fixture("exp1.json");
    let two = fixture("two_term.json");
    let fam = fixture("translates.json");
    let compact = fixture("compact_symbol.json");
    let shifted = fixture("shifted_identity.json");
    let dir = tempfile::tempdir().unwrap();
    let lambdas = dir.path().join("lambdas.json");
    let logs: Vec<f64> = (1..=64).map(|n| (n as f64).ln()).collect();
    std::fs::write(&lambdas, serde_json::to_string(&logs).unwrap()).unwrap();

    let runs: Vec<Vec<&str>> = vec![
        vec![
            "translate-set",
            "--poly",
            path(&exp),
            "--epsilon",
            "0.1",
            "--T",
            "20",
        ],
        vec![
            "joint-set",
            "--family",
            path(&fam),
            "--epsilon",
            "0.5",
            "--T",
            "20",
        ],
        vec!["bohr", "--poly", path(&two), "--lambda", "1", "--T", "200"],
        vec![
            "spectrum",
            "--poly",
            path(&two),
            "--candidates",
            "0.5,1,2",
            "--T",
            "200",
            "--threshold",
            "0.1",
        ],
        vec![
            "abscissa",
            "--lambdas",
            path(&lambdas),
            "--kappa",
            "2",
            "--n-cut",
            "16",
        ],
        vec![
            "poisson-check",
            "--poly",
            path(&two),
            "--kappa",
            "0.5",
            "--sigma",
            "1",
            "--t",
            "-0.3",
        ],
        vec![
            "schottky",
            "--poly",
            path(&exp),
            "--center",
            "1+0i",
            "--r",
            "0.5",
            "--radial",
            "10",
            "--angular",
            "16",
        ],
        vec!["compact-subspace", "--symbol", path(&compact)],
        vec![
            "algebra",
            "--symbol",
            path(&shifted),
            "--r",
            "2",
            "--n-sigma",
            "21",
            "--n-t",
            "201",
        ],
        vec![
            "counterexample",
            "--lambda-n",
            "2",
            "--lambda",
            "1",
            "--kappa",
            "0.5",
        ],
    ];
    for args in runs {
        let text = stdout(&apline(&args));
        let doc: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(doc.is_object(), "{args:?}");
        let reparsed = match args[0] {
            "translate-set" => {
                apline_core::almost_periodic::TranslationReport::from_json(&text).map(|_| ())
            }
            "joint-set" => {
                apline_core::almost_periodic::JointTranslationReport::from_json(&text).map(|_| ())
            }
            "bohr" => apline_core::bohr::BohrCoefficient::from_json(&text).map(|_| ()),
            "spectrum" => apline_core::bohr::SpectrumReport::from_json(&text).map(|_| ()),
            "poisson-check" => apline_core::riesz::PoissonCheck::from_json(&text).map(|_| ()),
            "schottky" => apline_core::almost_periodic::SchottkyCheck::from_json(&text).map(|_| ()),
            "compact-subspace" | "algebra" => Verdict::from_json(&text).map(|_| ()),
            "counterexample" => {
                apline_core::montel::CounterexampleGap::from_json(&text).map(|_| ())
            }
            _ => Ok(()),
        };
        reparsed.unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}
