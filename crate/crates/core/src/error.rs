use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, FhtError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FhtError {
    #[error("non-finite sample at x = {x}")]
    NonFiniteSample { x: f64 },

    #[error("degenerate grid: need at least 2 samples, got {len}")]
    DegenerateGrid { len: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("endpoint exponents a = {a}, b = {b} are not integrable (real parts must exceed -1)")]
    NonIntegrableExponents { a: Complex64, b: Complex64 },

    #[error("quadrature did not converge: estimated error {error:e} after {panels} panels")]
    NoConvergence { error: f64, panels: usize },

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("function is not finite at the singular point t = {t}")]
    SingularEvaluation { t: f64 },

    #[error("evaluation point {t} lies outside (-1 + {edge}, 1 - {edge})")]
    OutsideInterior { t: f64, edge: f64 },

    #[error("no closed-form transform for exponents a = {a}, b = {b}")]
    UnsupportedExponents { a: Complex64, b: Complex64 },

    #[error("weight exponents ({gamma}, {delta}) outside (-1/p, 1/p') for p = {p}")]
    ExponentOutOfRange { gamma: f64, delta: f64, p: f64 },

    #[error("right-hand side is not in the range: solvability residual {residual:e}")]
    NotSolvable { residual: f64 },

    #[error("lambda = {lambda} lies on the excluded branch set")]
    BranchViolation { lambda: Complex64 },

    #[error("lambda = {lambda} is not an eigenvalue of any L^p realisation")]
    OutsideEigenvalueSet { lambda: Complex64 },

    #[error("unsupported space descriptor: {0}")]
    UnsupportedDescriptor(String),

    #[error("invalid space descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("point classification undetermined: {0}")]
    Undetermined(String),

    #[error(
        "classification inconsistent with the eigenfunction membership test at lambda = {lambda}"
    )]
    Inconsistent { lambda: Complex64 },

    #[error("indicator set has zero measure")]
    DegenerateSet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for FhtError {
    fn from(e: std::io::Error) -> Self {
        FhtError::Io(e.to_string())
    }
}
