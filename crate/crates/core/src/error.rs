use thiserror::Error;

/// Everything that can go wrong while building states or evaluating rates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the physically meaningful range.
    #[error("{name} = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A symplectic eigenvalue fell below one by more than rounding can explain,
    /// or the covariance matrix is not positive definite.
    #[error("non-physical state: {context} (value {value})")]
    NonPhysical { value: f64, context: &'static str },

    /// Matrix shapes do not line up.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// The operation is well defined in general but not for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An optimisation constraint cannot be met.
    #[error("constraint cannot be satisfied: {0}")]
    Constraint(String),

    /// Caller supplied arguments that make no sense together.
    #[error("invalid usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }

    /// True for errors that reflect non-physical inputs rather than misuse of the API.
    pub fn is_physical(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::NonPhysical { .. })
    }
}
