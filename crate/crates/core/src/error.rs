use thiserror::Error;

/// Errors raised by the scenario models.
///
/// Each variant marks a distinct reason why a bound check cannot be performed.
/// None of them is a bound violation: violations are reported through
/// [`BoundReport::satisfied`](crate::BoundReport::satisfied).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    /// Inputs outside the physical domain of the model.
    #[error("domain error: {0}")]
    Domain(String),

    /// The conductor does not carry enough charge to trap the field.
    #[error("confinement failure: carrier density {density:.6e} below the minimum {minimum:.6e}")]
    Confinement { density: f64, minimum: f64 },

    /// The wave frequency is above the plasma cutoff and propagates freely.
    #[error("wave propagates: omega {omega:.6e} >= plasma frequency {omega_p:.6e}")]
    Propagation { omega: f64, omega_p: f64 },

    /// The shooting integration never reached a zero of the field.
    #[error("no zero of the field profile for amplitude {amplitude}: {reason}")]
    NoZero { amplitude: f64, reason: String },
}

impl BoundError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        BoundError::Domain(msg.into())
    }

    /// Short machine-readable tag used in report rows.
    pub fn kind(&self) -> &'static str {
        match self {
            BoundError::Domain(_) => "domain_error",
            BoundError::Confinement { .. } => "confinement_error",
            BoundError::Propagation { .. } => "propagation_error",
            BoundError::NoZero { .. } => "no_zero_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, BoundError>;
