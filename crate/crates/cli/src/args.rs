use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "apline",
    version,
    about = "Almost periodic analysis of general Dirichlet polynomials"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the artifact to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Artifact format; csv is available for norm, translate-set,
    /// riesz-sweep, montel and separation
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Scan {
    /// Real part of the line Re s = kappa
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,
    /// Scan length or half-width of the line window
    #[arg(long = "T", alias = "window", default_value_t = 200.0)]
    pub window: f64,
    /// Grid step; derived from --slack when omitted
    #[arg(long)]
    pub step: Option<f64>,
    /// Lipschitz slack L*step/2 used when --step is omitted
    #[arg(long, default_value_t = 1e-6)]
    pub slack: f64,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.parse::<Complex64>()
        .map_err(|e| format!("{s:?} is not a complex number: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a polynomial at a point of the closed half-plane
    Eval {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// Certified sup-norm enclosure on a vertical line (csv: line scan)
    Norm {
        #[arg(long)]
        poly: PathBuf,
        #[command(flatten)]
        scan: Scan,
    },
    /// epsilon-translation numbers on [0, T] (csv: defect curve)
    TranslateSet {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        scan: Scan,
    },
    /// Common translation numbers of a family (JSON list of polynomials)
    JointSet {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<f64>>,
        #[command(flatten)]
        scan: Scan,
    },
    /// Finite-window Bohr coefficient
    Bohr {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long = "T", default_value_t = 2000.0)]
        t: f64,
    },
    /// Bohr coefficients at candidate frequencies
    Spectrum {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        candidates: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long = "T", default_value_t = 2000.0)]
        t: f64,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Abscissa estimate L(lambda) of a frequency prefix, with an optional tail bound
    Abscissa {
        /// JSON array of frequencies
        #[arg(long)]
        lambdas: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        cap: f64,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long, default_value_t = 0)]
        n_cut: usize,
    },
    /// First-order Riesz mean
    Riesz {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        omega: f64,
    },
    /// Riesz approximation errors over a list of omegas (csv available)
    RieszSweep {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        kappa: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        omegas: Vec<f64>,
        #[arg(long = "T", default_value_t = 200.0)]
        window: f64,
        #[arg(long, default_value_t = 1e-6)]
        slack: f64,
    },
    /// Poisson integral against the direct value on a shifted line
    PoissonCheck {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 1e-6)]
        budget: f64,
    },
    /// Schottky inequality for exp(P) on a ball
    Schottky {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        center: Complex64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 100)]
        radial: usize,
        #[arg(long, default_value_t = 100)]
        angular: usize,
    },
    /// Self-map and boundedness verdict for a symbol
    Classify {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long = "T", default_value_t = 200.0)]
        window: f64,
    },
    /// Compactness verdict on the full space
    Compact {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long = "T", default_value_t = 200.0)]
        window: f64,
    },
    /// Compactness verdict on jointly almost periodic subspaces
    CompactSubspace {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long = "T", default_value_t = 200.0)]
        window: f64,
    },
    /// Uniform continuity of the symbol on a sublevel set of Re phi
    Algebra {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.25,0.125")]
        deltas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        epsilons: Vec<f64>,
        #[arg(long, default_value_t = 4.0)]
        sigma_max: f64,
        #[arg(long = "T", default_value_t = 20.0)]
        window: f64,
        #[arg(long, default_value_t = 81)]
        n_sigma: usize,
        #[arg(long, default_value_t = 801)]
        n_t: usize,
    },
    /// Joint-AP dichotomy for a family manifest (csv: distance matrix)
    Montel {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        scan: Scan,
    },
    /// Separation of two exponentials at opposite phase
    Counterexample {
        #[arg(long)]
        lambda_n: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        kappa: f64,
    },
    /// Pairwise separation lower bounds (csv available)
    Separation {
        #[arg(long, value_delimiter = ',', required = true)]
        lambdas: Vec<f64>,
        #[arg(long)]
        kappa: f64,
    },
}
