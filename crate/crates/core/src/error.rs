use thiserror::Error;

/// Errors raised across the crate.
///
/// `Precondition` carries the name of the violated predicate verbatim, so
/// front ends can surface it unchanged.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QrhError {
    #[error("precondition violated: {predicate}")]
    Precondition { predicate: String },

    #[error("region violation: {predicate}")]
    Region { predicate: String },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("integrand does not decay at the contour ends: {0}")]
    Divergent(String),

    #[error("infinite product diverges: {0}")]
    DivergentProduct(String),

    #[error("evaluation point is a {kind} of the function")]
    Singular { kind: String },

    #[error("series has a non-unit constant term and cannot be inverted")]
    NonUnitInverse,

    #[error("charges on a ray are not collinear: {0}")]
    NotCollinear(String),

    #[error("truncation window too small: {0}")]
    Truncation(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl QrhError {
    pub fn precondition(p: impl Into<String>) -> Self {
        Self::Precondition { predicate: p.into() }
    }

    /// True for violations of a stated domain predicate, as opposed to
    /// numerical failures.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Self::Precondition { .. }
                | Self::Region { .. }
                | Self::Singular { .. }
                | Self::InvalidArgument(_)
                | Self::NotCollinear(_)
                | Self::NonUnitInverse
        )
    }
}

pub type Result<T> = std::result::Result<T, QrhError>;
