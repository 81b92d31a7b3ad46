use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    #[error("pole of the Gamma function at {0}")]
    Pole(f64),

    #[error("truncation budget cannot meet tolerance {tol:e}: {reason}")]
    TruncationBudget { tol: f64, reason: String },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e}) after {panels} panels")]
    QuadratureBudget { tol: f64, estimate: f64, panels: usize },

    #[error("iteration did not converge after {iterations} steps (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no level crossing found up to xi = {horizon}")]
    CrossingNotFound { horizon: f64 },

    #[error("coefficient c_{index} is outside the available window")]
    CoefficientWindow { index: i64 },

    #[error("alpha = {0} is rational or indistinguishable from a rational with denominator <= 10^6")]
    RationalAlpha(String),

    #[error("step values must be strictly monotone")]
    NonMonotone,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
