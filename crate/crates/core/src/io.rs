//! JSON documents and CSV tables.
//!
//! A polynomial is `{"terms":[{"lambda":…,"re":…,"im":…}, …]}` with strictly
//! increasing nonnegative `lambda`; a symbol is `{"a":…,"psi":<polynomial>}`.
//! Every type implementing [`Artifact`] satisfies
//! `from_json(&x.to_json()) == x`.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::almost_periodic::{JointTranslationReport, SchottkyCheck, TranslationReport};
use crate::bohr::{BohrCoefficient, CoefficientBound, SpectrumEntry, SpectrumReport};
use crate::composition::{LinearEstimate, Symbol, Verdict};
use crate::error::{Error, Result};
use crate::halfplane::{Bracket, GDPolynomial, LineSample, SupNormEnclosure};
use crate::montel::{CounterexampleGap, DichotomyReport, Extraction, FamilySpec, Generator};
use crate::riesz::{PoissonCheck, RieszSweep};

/// A value with a canonical JSON document.
pub trait Artifact: Sized {
    fn to_json(&self) -> String;
    fn from_json(text: &str) -> Result<Self>;
}

fn malformed(e: serde_json::Error) -> Error {
    Error::Malformed(e.to_string())
}

fn write_doc<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents hold finite numbers and string keys")
}

fn read_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(malformed)
}

macro_rules! plain_artifact {
    ($($t:ty),* $(,)?) => {$(
        impl Artifact for $t {
            fn to_json(&self) -> String {
                write_doc(self)
            }
            fn from_json(text: &str) -> Result<Self> {
                read_doc(text)
            }
        }
    )*};
}

plain_artifact!(
    SupNormEnclosure,
    Bracket,
    TranslationReport,
    JointTranslationReport,
    SchottkyCheck,
    CoefficientBound,
    RieszSweep,
    Verdict,
    LinearEstimate,
    CounterexampleGap,
);

/// Implements [`Artifact`] through a document type `$doc` with
/// `From<&$t>` and `TryFrom<$doc, Error = Error>`.
macro_rules! doc_artifact {
    ($($t:ty => $doc:ty),* $(,)?) => {$(
        impl Artifact for $t {
            fn to_json(&self) -> String {
                write_doc(&<$doc>::from(self))
            }
            fn from_json(text: &str) -> Result<Self> {
                <$t>::try_from(read_doc::<$doc>(text)?)
            }
        }
    )*};
}

doc_artifact!(
    GDPolynomial => PolyDoc,
    Symbol => SymbolDoc,
    SpectrumReport => SpectrumDoc,
    BohrCoefficient => BohrDoc,
    PoissonCheck => PoissonDoc,
    FamilySpec => FamilyDoc,
    Extraction => ExtractionDoc,
    DichotomyReport => DichotomyDoc,
);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    lambda: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct PolyDoc {
    terms: Vec<TermDoc>,
}

impl From<&GDPolynomial> for PolyDoc {
    fn from(p: &GDPolynomial) -> Self {
        PolyDoc {
            terms: p
                .terms()
                .iter()
                .map(|t| TermDoc {
                    lambda: t.lambda,
                    re: t.coeff.re,
                    im: t.coeff.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyDoc> for GDPolynomial {
    type Error = Error;

    fn try_from(doc: PolyDoc) -> Result<Self> {
        if let Some(t) = doc.terms.iter().find(|t| !(t.lambda >= 0.0)) {
            return Err(Error::NegativeFrequency(t.lambda));
        }
        GDPolynomial::from_strict(
            doc.terms
                .into_iter()
                .map(|t| (t.lambda, Complex64::new(t.re, t.im))),
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolDoc {
    a: f64,
    psi: PolyDoc,
}

impl From<&Symbol> for SymbolDoc {
    fn from(s: &Symbol) -> Self {
        SymbolDoc {
            a: s.a(),
            psi: s.psi().into(),
        }
    }
}

impl TryFrom<SymbolDoc> for Symbol {
    type Error = Error;

    fn try_from(doc: SymbolDoc) -> Result<Self> {
        if !(doc.a >= 0.0) {
            return Err(Error::NegativeLinearCoefficient(doc.a));
        }
        Symbol::new(doc.a, doc.psi.try_into()?)
    }
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        ComplexDoc { re: z.re, im: z.im }
    }
}

impl From<ComplexDoc> for Complex64 {
    fn from(z: ComplexDoc) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    lambda: f64,
    re: f64,
    im: f64,
    err: f64,
}

impl From<&SpectrumEntry> for EntryDoc {
    fn from(e: &SpectrumEntry) -> Self {
        EntryDoc {
            lambda: e.lambda,
            re: e.estimate.re,
            im: e.estimate.im,
            err: e.error_bound,
        }
    }
}

impl From<EntryDoc> for SpectrumEntry {
    fn from(e: EntryDoc) -> Self {
        SpectrumEntry {
            lambda: e.lambda,
            estimate: Complex64::new(e.re, e.im),
            error_bound: e.err,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumDoc {
    threshold: f64,
    candidates: Vec<EntryDoc>,
    detected: Vec<EntryDoc>,
}

impl From<&SpectrumReport> for SpectrumDoc {
    fn from(r: &SpectrumReport) -> Self {
        SpectrumDoc {
            threshold: r.threshold,
            candidates: r.candidates.iter().map(Into::into).collect(),
            detected: r.detected.iter().map(Into::into).collect(),
        }
    }
}

impl TryFrom<SpectrumDoc> for SpectrumReport {
    type Error = Error;

    fn try_from(d: SpectrumDoc) -> Result<Self> {
        Ok(SpectrumReport {
            threshold: d.threshold,
            candidates: d.candidates.into_iter().map(Into::into).collect(),
            detected: d.detected.into_iter().map(Into::into).collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BohrDoc {
    estimate: ComplexDoc,
    error_bound: f64,
    exact: ComplexDoc,
}

impl From<&BohrCoefficient> for BohrDoc {
    fn from(b: &BohrCoefficient) -> Self {
        BohrDoc {
            estimate: b.estimate.into(),
            error_bound: b.error_bound,
            exact: b.exact.into(),
        }
    }
}

impl TryFrom<BohrDoc> for BohrCoefficient {
    type Error = Error;

    fn try_from(d: BohrDoc) -> Result<Self> {
        Ok(BohrCoefficient {
            estimate: d.estimate.into(),
            error_bound: d.error_bound,
            exact: d.exact.into(),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoissonDoc {
    convolution: ComplexDoc,
    direct: ComplexDoc,
    discrepancy: f64,
    cutoff: f64,
}

impl From<&PoissonCheck> for PoissonDoc {
    fn from(c: &PoissonCheck) -> Self {
        PoissonDoc {
            convolution: c.convolution.into(),
            direct: c.direct.into(),
            discrepancy: c.discrepancy,
            cutoff: c.cutoff,
        }
    }
}

impl TryFrom<PoissonDoc> for PoissonCheck {
    type Error = Error;

    fn try_from(d: PoissonDoc) -> Result<Self> {
        Ok(PoissonCheck {
            convolution: d.convolution.into(),
            direct: d.direct.into(),
            discrepancy: d.discrepancy,
            cutoff: d.cutoff,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum GeneratorDoc {
    SharedFrequency {
        frequencies: Vec<f64>,
        center: Vec<ComplexDoc>,
        spread: f64,
        members: usize,
    },
    VerticalTranslates {
        base: PolyDoc,
        tau_max: f64,
        members: usize,
    },
    DriftingFrequency {
        base: f64,
        members: usize,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    generator: GeneratorDoc,
    seed: u64,
}

impl From<&FamilySpec> for FamilyDoc {
    fn from(f: &FamilySpec) -> Self {
        let generator = match &f.generator {
            Generator::SharedFrequency {
                frequencies,
                center,
                spread,
                members,
            } => GeneratorDoc::SharedFrequency {
                frequencies: frequencies.clone(),
                center: center.iter().map(|&c| c.into()).collect(),
                spread: *spread,
                members: *members,
            },
            Generator::VerticalTranslates {
                base,
                tau_max,
                members,
            } => GeneratorDoc::VerticalTranslates {
                base: base.into(),
                tau_max: *tau_max,
                members: *members,
            },
            Generator::DriftingFrequency { base, members } => GeneratorDoc::DriftingFrequency {
                base: *base,
                members: *members,
            },
        };
        FamilyDoc {
            generator,
            seed: f.seed,
        }
    }
}

impl TryFrom<FamilyDoc> for FamilySpec {
    type Error = Error;

    fn try_from(d: FamilyDoc) -> Result<Self> {
        let generator = match d.generator {
            GeneratorDoc::SharedFrequency {
                frequencies,
                center,
                spread,
                members,
            } => {
                if let Some(&l) = frequencies.iter().find(|l| !(**l >= 0.0)) {
                    return Err(Error::NegativeFrequency(l));
                }
                if let Some(w) = frequencies.windows(2).find(|w| w[0] >= w[1]) {
                    return Err(Error::FrequencyOrder {
                        prev: w[0],
                        next: w[1],
                    });
                }
                Generator::SharedFrequency {
                    frequencies,
                    center: center.into_iter().map(Into::into).collect(),
                    spread,
                    members,
                }
            }
            GeneratorDoc::VerticalTranslates {
                base,
                tau_max,
                members,
            } => Generator::VerticalTranslates {
                base: base.try_into()?,
                tau_max,
                members,
            },
            GeneratorDoc::DriftingFrequency { base, members } => {
                if !(base >= 0.0) {
                    return Err(Error::NegativeFrequency(base));
                }
                Generator::DriftingFrequency { base, members }
            }
        };
        Ok(FamilySpec {
            generator,
            seed: d.seed,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtractionDoc {
    indices: Vec<usize>,
    limit: PolyDoc,
    diameter: f64,
    diameter_lower: f64,
}

impl From<&Extraction> for ExtractionDoc {
    fn from(e: &Extraction) -> Self {
        ExtractionDoc {
            indices: e.indices.clone(),
            limit: (&e.limit).into(),
            diameter: e.diameter,
            diameter_lower: e.diameter_lower,
        }
    }
}

impl TryFrom<ExtractionDoc> for Extraction {
    type Error = Error;

    fn try_from(d: ExtractionDoc) -> Result<Self> {
        Ok(Extraction {
            indices: d.indices,
            limit: d.limit.try_into()?,
            diameter: d.diameter,
            diameter_lower: d.diameter_lower,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DichotomyDoc {
    joint: JointTranslationReport,
    jointly_ap: bool,
    extraction: ExtractionDoc,
    clustered: bool,
    max_pair_lower: f64,
    agreement: bool,
}

impl From<&DichotomyReport> for DichotomyDoc {
    fn from(r: &DichotomyReport) -> Self {
        DichotomyDoc {
            joint: r.joint.clone(),
            jointly_ap: r.jointly_ap,
            extraction: (&r.extraction).into(),
            clustered: r.clustered,
            max_pair_lower: r.max_pair_lower,
            agreement: r.agreement,
        }
    }
}

impl TryFrom<DichotomyDoc> for DichotomyReport {
    type Error = Error;

    fn try_from(d: DichotomyDoc) -> Result<Self> {
        Ok(DichotomyReport {
            joint: d.joint,
            jointly_ap: d.jointly_ap,
            extraction: d.extraction.try_into()?,
            clustered: d.clustered,
            max_pair_lower: d.max_pair_lower,
            agreement: d.agreement,
        })
    }
}

/// Parses a polynomial document.
pub fn parse_polynomial(text: &str) -> Result<GDPolynomial> {
    GDPolynomial::from_json(text)
}

/// Parses a symbol document.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    Symbol::from_json(text)
}

/// Parses a JSON list of polynomial documents.
pub fn parse_family(text: &str) -> Result<Vec<GDPolynomial>> {
    read_doc::<Vec<PolyDoc>>(text)?
        .into_iter()
        .map(GDPolynomial::try_from)
        .collect()
}

pub fn family_to_json(family: &[GDPolynomial]) -> String {
    write_doc(&family.iter().map(PolyDoc::from).collect::<Vec<_>>())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Malformed(e.to_string())
}

fn write_rows<W: Write>(
    out: W,
    header: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row.iter().map(f64::to_string))
            .map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Malformed(e.to_string()))
}

fn read_rows<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_reader(input);
    let found = r.headers().map_err(csv_error)?.clone();
    if !header.is_empty() && found.iter().ne(header.iter().copied()) {
        return Err(Error::Malformed(format!(
            "expected columns {header:?}, found {found:?}"
        )));
    }
    r.records()
        .map(|rec| {
            rec.map_err(csv_error)?
                .iter()
                .map(|x| {
                    x.parse::<f64>()
                        .map_err(|e| Error::Malformed(format!("{x:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

/// Columns `t, re, im, abs`.
pub fn write_line_scan<W: Write>(out: W, samples: &[LineSample]) -> Result<()> {
    write_rows(
        out,
        &["t", "re", "im", "abs"],
        samples
            .iter()
            .map(|s| vec![s.t, s.value.re, s.value.im, s.value.norm()]),
    )
}

pub fn read_line_scan<R: Read>(input: R) -> Result<Vec<LineSample>> {
    Ok(read_rows(input, &["t", "re", "im", "abs"])?
        .into_iter()
        .map(|r| LineSample {
            t: r[0],
            value: Complex64::new(r[1], r[2]),
        })
        .collect())
}

/// Columns `tau, defect`.
pub fn write_defect_curve<W: Write>(out: W, curve: &[(f64, f64)]) -> Result<()> {
    write_rows(
        out,
        &["tau", "defect"],
        curve.iter().map(|&(t, d)| vec![t, d]),
    )
}

pub fn read_defect_curve<R: Read>(input: R) -> Result<Vec<(f64, f64)>> {
    Ok(read_rows(input, &["tau", "defect"])?
        .into_iter()
        .map(|r| (r[0], r[1]))
        .collect())
}

/// Columns `omega, err_lower, err_upper, bound`.
pub fn write_sweep<W: Write>(out: W, sweep: &RieszSweep) -> Result<()> {
    write_rows(
        out,
        &["omega", "err_lower", "err_upper", "bound"],
        sweep
            .omegas
            .iter()
            .zip(&sweep.errors)
            .zip(&sweep.bounds)
            .map(|((&w, e), &b)| vec![w, e.lower, e.upper, b]),
    )
}

/// Rows of `(omega, err_lower, err_upper, bound)`.
pub fn read_sweep<R: Read>(input: R) -> Result<Vec<[f64; 4]>> {
    Ok(
        read_rows(input, &["omega", "err_lower", "err_upper", "bound"])?
            .into_iter()
            .map(|r| [r[0], r[1], r[2], r[3]])
            .collect(),
    )
}

/// Square matrix with columns `0, 1, …, n−1`.
pub fn write_distance_matrix<W: Write>(out: W, matrix: &[Vec<f64>]) -> Result<()> {
    let header: Vec<String> = (0..matrix.len()).map(|j| j.to_string()).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_rows(out, &header, matrix.iter().cloned())
}

pub fn read_distance_matrix<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let rows = read_rows(input, &[])?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Malformed("distance matrix is not square".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_canonical_form() {
        let p = GDPolynomial::new([
            (0.0, Complex64::new(1.0, 0.0)),
            (1.0, Complex64::new(0.0, 2.0)),
        ])
        .unwrap();
        let text = p.to_json();
        let compact: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            compact.to_string(),
            r#"{"terms":[{"im":0.0,"lambda":0.0,"re":1.0},{"im":2.0,"lambda":1.0,"re":0.0}]}"#
        );
        assert_eq!(parse_polynomial(&text).unwrap(), p);
    }

    #[test]
    fn polynomial_errors() {
        let code = |t: &str| parse_polynomial(t).unwrap_err().code();
        assert_eq!(
            code(r#"{"terms":[{"lambda":2,"re":1,"im":0},{"lambda":1,"re":1,"im":0}]}"#),
            "FrequencyOrder"
        );
        assert_eq!(
            code(r#"{"terms":[{"lambda":-1,"re":1,"im":0}]}"#),
            "NegativeFrequency"
        );
        assert_eq!(code(r#"{"terms":[{"lambda":1,"re":1}]}"#), "Malformed");
        assert_eq!(code("not json"), "Malformed");
        assert!(parse_polynomial(r#"{"terms":[]}"#).unwrap().is_empty());
    }

    #[test]
    fn symbol_errors() {
        assert_eq!(
            parse_symbol(r#"{"a":-0.5,"psi":{"terms":[]}}"#)
                .unwrap_err()
                .code(),
            "NegativeLinearCoefficient"
        );
        assert_eq!(
            parse_symbol(r#"{"a":1,"psi":{"terms":[]},"b":2}"#)
                .unwrap_err()
                .code(),
            "Malformed"
        );
        let s = parse_symbol(r#"{"a":1,"psi":{"terms":[{"lambda":0,"re":0.5,"im":0}]}}"#).unwrap();
        assert_eq!(Symbol::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn family_spec_round_trip() {
        let spec = FamilySpec {
            generator: Generator::SharedFrequency {
                frequencies: vec![0.0, 1.0, 2.0],
                center: vec![Complex64::new(0.1, -0.2); 3],
                spread: 0.05,
                members: 4,
            },
            seed: 17,
        };
        assert_eq!(FamilySpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(spec.to_json().contains(r#""kind": "shared_frequency""#));
    }

    #[test]
    fn csv_round_trip() {
        let m = vec![vec![0.0, 0.25], vec![0.25, 0.0]];
        let mut buf = Vec::new();
        write_distance_matrix(&mut buf, &m).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "0,1\n0,0.25\n0.25,0\n"
        );
        assert_eq!(read_distance_matrix(buf.as_slice()).unwrap(), m);

        let samples = vec![LineSample {
            t: -1.5,
            value: Complex64::new(0.1, 1.0 / 3.0),
        }];
        let mut buf = Vec::new();
        write_line_scan(&mut buf, &samples).unwrap();
        assert_eq!(read_line_scan(buf.as_slice()).unwrap(), samples);
    }
}
