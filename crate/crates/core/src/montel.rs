//! Uniform subsequence extraction for uniformly bounded families, the
//! joint-AP dichotomy, and separation of distinct exponentials.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::almost_periodic::{joint_translation_set, JointTranslationReport};
use crate::cluster::{diameter, greedy_cluster};
use crate::error::{require, Error, Result};
use crate::halfplane::{max_modulus, step_for_slack, GDPolynomial, LineWindow, DEFAULT_WINDOW};

/// How the members of a family are generated.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `Σ (centerₙ + spread·uₙ) e^(−λₙs)` with `uₙ` uniform in the unit disc.
    SharedFrequency {
        frequencies: Vec<f64>,
        center: Vec<Complex64>,
        spread: f64,
        members: usize,
    },
    /// `V_τ base` with `τ` uniform in `[0, tau_max]`.
    VerticalTranslates {
        base: GDPolynomial,
        tau_max: f64,
        members: usize,
    },
    /// `e^(−(base + 1/n)s)` for `n = 1..=members`.
    DriftingFrequency { base: f64, members: usize },
}

/// A reproducible experiment family.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub generator: Generator,
    pub seed: u64,
}

impl FamilySpec {
    /// Declared uniform bound `M ≥ Σ|coeffₙ|` for every member.
    pub fn bound(&self) -> f64 {
        match &self.generator {
            Generator::SharedFrequency { center, spread, .. } => {
                center.iter().map(|c| c.norm() + spread).sum()
            }
            Generator::VerticalTranslates { base, .. } => base.abs_sum(),
            Generator::DriftingFrequency { .. } => 1.0,
        }
    }

    pub fn generate(&self) -> Result<Vec<GDPolynomial>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        match &self.generator {
            Generator::SharedFrequency {
                frequencies,
                center,
                spread,
                members,
            } => {
                require(frequencies.len() == center.len(), || {
                    format!(
                        "{} frequencies but {} centre coefficients",
                        frequencies.len(),
                        center.len()
                    )
                })?;
                require(frequencies.windows(2).all(|w| w[0] < w[1]), || {
                    "shared frequencies must be strictly increasing".into()
                })?;
                require(*spread >= 0.0 && spread.is_finite(), || {
                    "spread must be nonnegative".into()
                })?;
                (0..*members)
                    .map(|_| {
                        let terms: Vec<(f64, Complex64)> = frequencies
                            .iter()
                            .zip(center)
                            .map(|(&l, &c)| {
                                let r = spread * rng.gen::<f64>().sqrt();
                                let theta = 2.0 * PI * rng.gen::<f64>();
                                (l, c + Complex64::from_polar(r, theta))
                            })
                            .collect();
                        GDPolynomial::from_strict(terms)
                    })
                    .collect()
            }
            Generator::VerticalTranslates {
                base,
                tau_max,
                members,
            } => {
                require(*tau_max >= 0.0 && tau_max.is_finite(), || {
                    "tau_max must be nonnegative".into()
                })?;
                Ok((0..*members)
                    .map(|_| base.vertical_translate(rng.gen::<f64>() * tau_max))
                    .collect())
            }
            Generator::DriftingFrequency { base, members } => {
                require(*base >= 0.0 && base.is_finite(), || {
                    "base frequency must be nonnegative".into()
                })?;
                (1..=*members)
                    .map(|n| {
                        GDPolynomial::monomial(base + 1.0 / n as f64, Complex64::new(1.0, 0.0))
                    })
                    .collect()
            }
        }
    }
}

/// Certified upper bound of `sup_{ℂ_κ} |f − g|`: `Σ|Δcₙ|e^(−λₙκ)`.
pub fn certified_distance(f: &GDPolynomial, g: &GDPolynomial, kappa: f64) -> f64 {
    (f - g).analytic_bound(kappa)
}

/// Symmetric matrix of [`certified_distance`].
pub fn distance_matrix(family: &[GDPolynomial], kappa: f64) -> Vec<Vec<f64>> {
    let n = family.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i < j {
                        certified_distance(&family[i], &family[j], kappa)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    let mut d = rows;
    for i in 1..n {
        let (upper, lower) = d.split_at_mut(i);
        for (j, row) in upper.iter().enumerate() {
            lower[0][j] = row[i];
        }
    }
    d
}

/// Controls for the lower estimate of the achieved diameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionControls {
    pub half_width: f64,
    pub slack: f64,
}

impl Default for ExtractionControls {
    fn default() -> Self {
        Self {
            half_width: DEFAULT_WINDOW,
            slack: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub indices: Vec<usize>,
    /// Last selected member.
    pub limit: GDPolynomial,
    /// Certified upper bound of the pairwise distances in the chain.
    pub diameter: f64,
    /// Lower bound of the same quantity from a line search.
    pub diameter_lower: f64,
}

/// Largest subfamily found whose certified pairwise distances on `ℂ_κ` are
/// all `≤ epsilon`. A single index means no clustering at this scale.
pub fn extract_uniform_subsequence(
    family: &[GDPolynomial],
    kappa: f64,
    epsilon: f64,
    controls: ExtractionControls,
) -> Result<Extraction> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    require(epsilon > 0.0, || {
        format!("epsilon must be positive (got {epsilon})")
    })?;
    require(kappa >= 0.0 && kappa.is_finite(), || {
        format!("kappa must be nonnegative (got {kappa})")
    })?;
    let dist = distance_matrix(family, kappa);
    let indices = greedy_cluster(&dist, epsilon);
    let diam = diameter(&dist, &indices);

    let mut worst = None;
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            if !worst.is_some_and(|(_, _, d)| dist[i][j] <= d) {
                worst = Some((i, j, dist[i][j]));
            }
        }
    }
    let diameter_lower = match worst {
        Some((i, j, _)) => {
            let diff = &family[i] - &family[j];
            let window = LineWindow::symmetric(controls.half_width)?;
            max_modulus(
                &diff,
                kappa,
                window,
                step_for_slack(&diff, kappa, controls.slack),
            )
            .lower
        }
        None => 0.0,
    };
    Ok(Extraction {
        limit: family[*indices.last().unwrap()].clone(),
        indices,
        diameter: diam,
        diameter_lower,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyReport {
    pub joint: JointTranslationReport,
    pub jointly_ap: bool,
    pub extraction: Extraction,
    /// Chain length at least half the family.
    pub clustered: bool,
    /// Largest certified lower bound of a pairwise distance.
    pub max_pair_lower: f64,
    pub agreement: bool,
}

/// Runs the joint translation scan and the extraction side by side.
pub fn joint_ap_dichotomy(
    family: &[GDPolynomial],
    epsilon: f64,
    kappa: f64,
    window: f64,
    step: f64,
    controls: ExtractionControls,
) -> Result<DichotomyReport> {
    let joint = joint_translation_set(family, epsilon, kappa, window, step, None)?;
    let jointly_ap = joint.report.is_relatively_dense();
    let extraction = extract_uniform_subsequence(family, kappa, epsilon, controls)?;
    let clustered = 2 * extraction.indices.len() >= family.len();
    let max_pair_lower = max_pair_lower(family, kappa, controls)?;
    Ok(DichotomyReport {
        joint,
        jointly_ap,
        clustered,
        agreement: jointly_ap == clustered,
        extraction,
        max_pair_lower,
    })
}

fn max_pair_lower(
    family: &[GDPolynomial],
    kappa: f64,
    controls: ExtractionControls,
) -> Result<f64> {
    let window = LineWindow::symmetric(controls.half_width)?;
    let n = family.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok(pairs
        .into_par_iter()
        .map(|(i, j)| {
            let diff = &family[i] - &family[j];
            // Two distinct exponentials are antipodal somewhere.
            if let ([a], [b]) = (family[i].terms(), family[j].terms()) {
                if a.lambda != b.lambda && a.coeff.norm() == 1.0 && b.coeff.norm() == 1.0 {
                    if let Ok(g) = counterexample_gap(a.lambda, b.lambda, kappa) {
                        return g.measured;
                    }
                }
            }
            max_modulus(
                &diff,
                kappa,
                window,
                step_for_slack(&diff, kappa, controls.slack),
            )
            .lower
        })
        .reduce(|| 0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CounterexampleGap {
    pub t_star: f64,
    /// `|e^(−λₙs*) − e^(−λs*)|` at `s* = κ + it*`.
    pub measured: f64,
    /// `e^(−2λₙκ) + e^(−2λκ) + 2e^(−(λₙ+λ)κ)`.
    pub closed_form_sq: f64,
    /// `2e^(−max(λₙ,λ)κ)`.
    pub bound: f64,
}

/// Evaluates two exponentials at the height where their phases are opposite.
pub fn counterexample_gap(lambda_n: f64, lambda: f64, kappa: f64) -> Result<CounterexampleGap> {
    require(lambda_n >= 0.0 && lambda >= 0.0, || {
        "frequencies must be nonnegative".into()
    })?;
    require(kappa > 0.0 && kappa.is_finite(), || {
        format!("kappa must be positive (got {kappa})")
    })?;
    if lambda_n == lambda {
        return Err(Error::DegenerateFrequencies(lambda));
    }
    let t_star = PI / (lambda_n - lambda);
    let s = Complex64::new(kappa, t_star);
    let measured = ((-lambda_n * s).exp() - (-lambda * s).exp()).norm();
    let closed_form_sq = (-2.0 * lambda_n * kappa).exp()
        + (-2.0 * lambda * kappa).exp()
        + 2.0 * (-(lambda_n + lambda) * kappa).exp();
    Ok(CounterexampleGap {
        t_star,
        measured,
        closed_form_sq,
        bound: 2.0 * (-lambda_n.max(lambda) * kappa).exp(),
    })
}

/// Pairwise lower bounds of `sup_{ℂ_κ} |e^(−λᵢs) − e^(−λⱼs)|`.
pub fn exponential_separation(lambdas: &[f64], kappa: f64) -> Result<Vec<Vec<f64>>> {
    let n = lambdas.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let g = counterexample_gap(lambdas[i], lambdas[j], kappa)?;
            d[i][j] = g.measured;
            d[j][i] = g.measured;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(f64, f64)]) -> GDPolynomial {
        GDPolynomial::new(terms.iter().map(|&(l, a)| (l, Complex64::new(a, 0.0)))).unwrap()
    }

    fn drifting(n: usize) -> Vec<GDPolynomial> {
        FamilySpec {
            generator: Generator::DriftingFrequency {
                base: 1.0,
                members: n,
            },
            seed: 0,
        }
        .generate()
        .unwrap()
    }

    #[test]
    fn copies_cluster_fully() {
        let p = poly(&[(1.0, 1.0), (2.5, -0.5)]);
        let fam = vec![p.clone(); 7];
        let e =
            extract_uniform_subsequence(&fam, 0.0, 1e-3, ExtractionControls::default()).unwrap();
        assert_eq!(e.indices, (0..7).collect::<Vec<_>>());
        assert_eq!(e.diameter, 0.0);
        assert_eq!(e.limit, p);
    }

    #[test]
    fn drifting_family_does_not_cluster() {
        let fam = drifting(30);
        let e = extract_uniform_subsequence(&fam, 0.5, 0.5, ExtractionControls::default()).unwrap();
        assert_eq!(e.indices.len(), 1);

        // At κ = 1 only the fast members come close; no chosen pair is
        // certifiably separated by more than ε.
        let eps = 2.0 * (-1.0f64).exp() * 0.9;
        let e = extract_uniform_subsequence(&fam, 1.0, eps, ExtractionControls::default()).unwrap();
        for (a, &i) in e.indices.iter().enumerate() {
            for &j in &e.indices[a + 1..] {
                let lam = |k: usize| 1.0 + 1.0 / (k + 1) as f64;
                assert!(counterexample_gap(lam(i), lam(j), 1.0).unwrap().measured <= eps);
            }
        }
    }

    #[test]
    fn gap_examples() {
        let g = counterexample_gap(2.0, 1.0, 0.5).unwrap();
        assert!((g.t_star - PI).abs() < 1e-15);
        assert!((g.measured * g.measured - g.closed_form_sq).abs() < 1e-12);
        let direct = (-1.0f64).exp() + (-0.5f64).exp();
        assert!((g.measured - direct).abs() < 1e-15);
        assert!((g.closed_form_sq - 0.9496).abs() < 2e-4);
        assert!((g.measured - 0.9745).abs() < 2e-4);
        assert!(g.measured >= g.bound && (g.bound - 0.7358).abs() < 1e-4);
        let g = counterexample_gap(1e-9, 0.0, 3.0).unwrap();
        assert!((g.measured - 2.0).abs() < 1e-6);
        assert_eq!(
            counterexample_gap(1.0, 1.0, 1.0).unwrap_err().code(),
            "DegenerateFrequencies"
        );
    }

    #[test]
    fn separation_matrix() {
        let kappa = 0.3;
        let d = exponential_separation(&[1.0, 2.0], kappa).unwrap();
        assert!((d[0][1] - ((-kappa).exp() + (-2.0 * kappa).exp())).abs() < 1e-12);
        assert_eq!(d[0][0], 0.0);
        assert!(exponential_separation(&[0.5, 0.5], kappa).is_err());
    }

    #[test]
    fn shared_family_bound_and_class() {
        let spec = FamilySpec {
            generator: Generator::SharedFrequency {
                frequencies: vec![0.0, 1.0, 2.0, 3.0],
                center: vec![Complex64::new(0.5, 0.0); 4],
                spread: 0.1,
                members: 20,
            },
            seed: 7,
        };
        let fam = spec.generate().unwrap();
        assert_eq!(fam, spec.generate().unwrap());
        for f in &fam {
            assert!(f.abs_sum() <= spec.bound() + 1e-12);
            assert!(f.frequencies().all(|l| [0.0, 1.0, 2.0, 3.0].contains(&l)));
        }
        let r =
            joint_ap_dichotomy(&fam, 0.5, 0.5, 100.0, 0.01, ExtractionControls::default()).unwrap();
        assert!(r.jointly_ap && r.clustered && r.agreement);
    }

    #[test]
    fn singleton_is_jointly_ap() {
        let r = joint_ap_dichotomy(
            &[poly(&[(1.0, 1.0)])],
            0.3,
            0.5,
            100.0,
            0.01,
            ExtractionControls::default(),
        )
        .unwrap();
        assert!(r.jointly_ap && r.clustered);
    }
}
