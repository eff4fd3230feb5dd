use thiserror::Error;

/// Errors raised by model evaluation, closed forms and the numeric solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible point: {0}")]
    Infeasible(String),

    #[error("{which} concavity violated: {detail}")]
    Concavity { which: &'static str, detail: String },

    #[error("no best response: follower Hessian not negative definite ({0})")]
    NoBestResponse(String),

    #[error("reservation profit infeasible: gross airline surplus {gross:.6} < reservation {pi_bar:.6}")]
    ReservationInfeasible { gross: f64, pi_bar: f64 },

    #[error("invalid contract: {0}")]
    InvalidContract(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("leader search failed: {0}")]
    BracketExhausted(String),

    #[error("best-response iteration did not contract after {iterations} iterations (last step {last_step:.3e})")]
    NonContraction { iterations: usize, last_step: f64 },

    #[error("FOC certificate failed: residual {residual:.3e} exceeds {tolerance:.3e}")]
    Certificate { residual: f64, tolerance: f64 },

    #[error("threshold not found: {0}")]
    ThresholdNotFound(String),

    #[error("empty grid")]
    EmptyGrid,
}

impl ModelError {
    /// True when the failure is a property of the model instance rather than of the numerics.
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            ModelError::Domain(_)
                | ModelError::Infeasible(_)
                | ModelError::Concavity { .. }
                | ModelError::NoBestResponse(_)
                | ModelError::ReservationInfeasible { .. }
                | ModelError::InvalidContract(_)
                | ModelError::Unsupported(_)
                | ModelError::ThresholdNotFound(_)
                | ModelError::EmptyGrid
        )
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
