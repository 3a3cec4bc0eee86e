//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("step-size bound `{bound}` violated: value {value} exceeds limit {limit}")]
    StepBound { bound: String, value: f64, limit: f64 },

    #[error("condition {condition} does not hold: {detail}")]
    ConditionNotSatisfied { condition: String, detail: String },

    #[error("operation needs `{capability}` on {function}")]
    Capability { capability: String, function: String },

    #[error("matrix is not positive definite (smallest eigenvalue {lambda_min})")]
    NotPositiveDefinite { lambda_min: f64 },

    #[error("non-finite or exploding iterate at iteration {iteration}")]
    Divergence { iteration: usize },

    #[error("reference solve failed: {0}")]
    Unsolved(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(field: &str, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn condition(condition: &str, detail: impl Into<String>) -> Self {
        Error::ConditionNotSatisfied {
            condition: condition.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn step_bound(bound: &str, value: f64, limit: f64) -> Self {
        Error::StepBound {
            bound: bound.to_string(),
            value,
            limit,
        }
    }

    /// Stable machine-readable tag, used in CLI error payloads.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Validation { .. } => "invalid_config",
            Error::Dimension { .. } => "dimension_mismatch",
            Error::StepBound { .. } => "step_bound",
            Error::ConditionNotSatisfied { .. } => "condition_not_satisfied",
            Error::Capability { .. } => "capability",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::Divergence { .. } => "divergence",
            Error::Unsolved(_) => "unsolved",
            Error::Domain(_) => "domain",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
