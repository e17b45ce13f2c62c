use thiserror::Error;

use crate::existence::NonExistence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid signature ({n},{p}): {reason}")]
    InvalidSignature { n: usize, p: usize, reason: String },

    #[error("degenerate induced metric at (s,t)=({s},{t}): det g = {det_g:e}")]
    DegenerateMetric { s: f64, t: f64, det_g: f64 },

    #[error("induced metric is degenerate at every one of the {points} grid points")]
    EverywhereDegenerate { points: usize },

    #[error("precondition failed at s={s}: {reason}")]
    Precondition { s: f64, reason: String },

    #[error("parametrization convention violated: {check}")]
    ConventionViolation { check: String },

    #[error("surface is not generic: {count} singular point(s) on the scanned grid")]
    NonGeneric { count: usize },

    #[error("direction curve is null and not parallel; the surface cannot be minimal")]
    NotMinimalByNullDirection,

    #[error("case (vii) excluded: eta = delta = <gamma',x'> = 0 forces g = 0")]
    CaseViiExcluded,

    #[error("no frame exists: {0}")]
    NonExistence(Box<NonExistence>),

    #[error("no witness: pattern ({a},{b},{c}) does not embed in R^{n}_{p}")]
    NoWitness {
        n: usize,
        p: usize,
        a: usize,
        b: usize,
        c: usize,
    },

    #[error("{0}")]
    Usage(String),

    #[error("malformed input at `{path}`: {message}")]
    Json { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
