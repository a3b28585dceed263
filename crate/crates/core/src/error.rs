use thiserror::Error;

/// Errors raised by the numerical routines and the document parsers.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`]),
/// which the CLI writes into its error JSON.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("frequencies must be strictly increasing (found {prev} then {next})")]
    FrequencyOrder { prev: f64, next: f64 },
    #[error("frequency {0} is negative or not finite")]
    NegativeFrequency(f64),
    #[error("linear coefficient a = {0} must be a finite nonnegative number")]
    NegativeLinearCoefficient(f64),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("scan window must be positive (got {0})")]
    EmptyWindow(f64),
    #[error("function family is empty")]
    EmptyFamily,
    #[error("no pair of translates is within tolerance {tolerance} (closest pair at {closest})")]
    ToleranceUnreachable { tolerance: f64, closest: f64 },
    #[error("distance {dist} is not inside the ball radius {r}")]
    DistanceOutOfRange { dist: f64, r: f64 },
    #[error("sample {index} comes within 1e-12 of an omitted value")]
    OmissionViolated { index: usize },
    #[error("frequency prefix has {0} terms; at least 16 are required")]
    FrequencyTooShort(usize),
    #[error("tail diverges: kappa = {kappa} does not exceed abscissa estimate {abscissa}")]
    DivergentTail { kappa: f64, abscissa: f64 },
    #[error("quadrature discrepancy {achieved} exceeds budget {budget}")]
    QuadratureBudgetExceeded { achieved: f64, budget: f64 },
    #[error("certified lower bound {0} is not positive")]
    NonpositiveLowerBound(f64),
    #[error("inconsistent samples: point estimate {point} and slope {slope} differ by more than {allowed}")]
    InconsistentSamples {
        point: f64,
        slope: f64,
        allowed: f64,
    },
    #[error("sample {index} leaves the admissible ball")]
    BallEscape { index: usize },
    #[error("degenerate frequencies: {0} appears twice")]
    DegenerateFrequencies(f64),
    #[error("sublevel set is empty on the sampled grid")]
    EmptySublevel,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "Malformed",
            Error::FrequencyOrder { .. } => "FrequencyOrder",
            Error::NegativeFrequency(_) => "NegativeFrequency",
            Error::NegativeLinearCoefficient(_) => "NegativeLinearCoefficient",
            Error::NonFinite(_) => "NonFinite",
            Error::Precondition(_) => "NumericPrecondition",
            Error::EmptyWindow(_) => "EmptyWindow",
            Error::EmptyFamily => "EmptyFamily",
            Error::ToleranceUnreachable { .. } => "ToleranceUnreachable",
            Error::DistanceOutOfRange { .. } => "DistanceOutOfRange",
            Error::OmissionViolated { .. } => "OmissionViolated",
            Error::FrequencyTooShort(_) => "FrequencyTooShort",
            Error::DivergentTail { .. } => "DivergentTail",
            Error::QuadratureBudgetExceeded { .. } => "QuadratureBudgetExceeded",
            Error::NonpositiveLowerBound(_) => "NonpositiveLowerBound",
            Error::InconsistentSamples { .. } => "InconsistentSamples",
            Error::BallEscape { .. } => "BallEscape",
            Error::DegenerateFrequencies(_) => "DegenerateFrequencies",
            Error::EmptySublevel => "EmptySublevel",
        }
    }

    /// True for errors caused by a malformed input document rather than by
    /// numeric preconditions.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::FrequencyOrder { .. }
                | Error::NegativeFrequency(_)
                | Error::NegativeLinearCoefficient(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}
