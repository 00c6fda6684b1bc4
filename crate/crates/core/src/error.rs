use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is degenerate (|a_n| = {leading:e}, max |a_k| = {scale:e})")]
    DegenerateLeadingCoefficient { leading: f64, scale: f64 },

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("fixed-order violation: {0}")]
    FixedOrderViolation(String),

    #[error("direct and factored routes disagree (direct stable = {direct}, factored stable = {factored})")]
    RouteDisagreement { direct: bool, factored: bool },

    #[error("enumeration budget exceeded: {what} ({size} > {limit})")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("frequency grid cannot certify exclusion near omega = {omega}")]
    InsufficientGrid { omega: f64 },

    #[error("interpolation is ill-conditioned (relative residual {residual:e})")]
    IllConditioned { residual: f64 },

    #[error("closed loop f + g is not Hurwitz")]
    UnstableClosedLoop,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error(
        "vertex reduction mismatch: max over 12 tuples = {twelve}, max over 16 tuples = {sixteen}"
    )]
    VertexReductionMismatch { twelve: f64, sixteen: f64 },

    #[error("parameter sweep could not be resolved: {0}")]
    Indeterminate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
