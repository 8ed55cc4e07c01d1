use std::fmt;

use fht_core::FhtError;

pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_NOT_SOLVABLE: i32 = 4;
pub const EXIT_UNSUPPORTED: i32 = 5;

/// A failure tagged with the stage it happened in and its exit code.
#[derive(Debug)]
pub struct CliError {
    pub stage: &'static str,
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(stage: &'static str, code: i32, message: impl Into<String>) -> Self {
        CliError {
            stage,
            code,
            message: message.into(),
        }
    }

    /// Exit codes: 2 for unusable input, 3 for numerical failure, 4 for an
    /// unsolvable equation, 5 for an unsupported space.
    pub fn from_core(stage: &'static str, e: FhtError) -> Self {
        let code = match &e {
            FhtError::NotSolvable { .. } => EXIT_NOT_SOLVABLE,
            FhtError::UnsupportedDescriptor(_) => EXIT_UNSUPPORTED,
            FhtError::NoConvergence { .. }
            | FhtError::NonFiniteIntegrand { .. }
            | FhtError::SingularEvaluation { .. }
            | FhtError::Undetermined(_)
            | FhtError::Inconsistent { .. } => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            FhtError::NotSolvable { residual } => {
                format!("right-hand side is not in the range; residual = {residual}")
            }
            other => other.to_string(),
        };
        CliError {
            stage,
            code,
            message,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error [{}]: {}", self.stage, self.message)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches a stage to core results.
pub trait Stage<T> {
    fn stage(self, stage: &'static str) -> CliResult<T>;
}

impl<T> Stage<T> for fht_core::Result<T> {
    fn stage(self, stage: &'static str) -> CliResult<T> {
        self.map_err(|e| CliError::from_core(stage, e))
    }
}
