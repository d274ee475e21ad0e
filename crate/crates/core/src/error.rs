use thiserror::Error;

use crate::oracle::{EofResult, EprResult};

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-physical state: {0}")]
    NonPhysical(String),

    #[error("malformed state: {0}")]
    Malformed(String),

    /// A closed-form expression was evaluated outside its domain (negative
    /// square-root or logarithm argument beyond tolerance).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular gains: 1 + gx*gp = 0")]
    SingularGain,

    #[error("sampler gave up after {attempts} rejected candidates")]
    SamplerBudget { attempts: usize },

    #[error(
        "entanglement-of-formation search exceeded its budget after {} iterations (best r_o = {})",
        best.iterations,
        best.r_o
    )]
    EofBudgetExceeded { best: Box<EofResult> },

    #[error(
        "EPR gain search exceeded its budget after {} iterations (best beta = {})",
        best.iterations,
        best.beta_min
    )]
    EprBudgetExceeded { best: Box<EprResult> },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::EofBudgetExceeded { .. } | Error::EprBudgetExceeded { .. } | Error::SamplerBudget { .. }
        )
    }

    /// Errors raised by the numerics rather than by how the tool was invoked.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonPhysical(_)
                | Error::Malformed(_)
                | Error::Domain(_)
                | Error::SingularGain
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
