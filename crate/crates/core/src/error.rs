use thiserror::Error;

use crate::forms::FormTag;

/// A presentation or template whose exponent data violates its form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("{form:?}: {reason}")]
    Invalid { form: FormTag, reason: String },
    #[error("chart context: {0}")]
    Context(String),
}

impl FormError {
    pub(crate) fn invalid(form: FormTag, reason: impl Into<String>) -> Self {
        FormError::Invalid {
            form,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("center {center} is not permissible at a {form:?} presentation: {reason}")]
    Permissibility {
        form: FormTag,
        center: String,
        reason: String,
    },
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("invariant undefined here: {0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("no center left to blow up: every presentation is principal")]
    NoCenter,
    #[error("step budget of {budget} exhausted with {remaining} centers left")]
    StepBudgetExceeded { budget: usize, remaining: usize },
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("presentation {0} is not principal; lift is undefined before principalization")]
    NotPrincipal(String),
    #[error("no toroidal template matches: {0}")]
    NoTemplateMatch(String),
    #[error("base point: {0}")]
    BasePoint(String),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Failure of one round of principalize-then-lift.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundError {
    #[error("round {round}: {source}")]
    Driver { round: usize, source: DriverError },
    #[error("round {round}: {source}")]
    Descent { round: usize, source: DescentError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search bound exceeded: {reason} (path of {} blowups)", path.len())]
    BoundExceeded {
        reason: String,
        path: Vec<crate::oracle::PathStep>,
    },
    #[error("scenario outside the search bound: {0}")]
    OutOfBounds(String),
}
