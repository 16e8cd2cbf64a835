use crate::bloch::BlochState;

/// Errors produced by model evaluation and the steady-state solvers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A denominator fell below its guard threshold; the closed form (or
    /// linear solve) is numerically meaningless at this parameter point.
    #[error("near-singular {context}: |denominator| = {magnitude:.3e} below guard {guard:.3e}")]
    NearSingular {
        context: &'static str,
        magnitude: f64,
        guard: f64,
    },

    /// Total output exceeded total input beyond numerical noise.
    #[error("passivity violated: absorption = {absorption:.3e} < -1e-9")]
    PassivityViolation { absorption: f64 },

    /// The time march hit its horizon before the derivative norm dropped
    /// below the convergence threshold. Carries the best state reached.
    #[error("steady-state march did not converge: residual {residual:.3e} after {steps} steps")]
    NotConverged {
        state: Box<BlochState>,
        residual: f64,
        steps: u64,
    },

    /// The density-matrix trace drifted beyond tolerance during integration.
    #[error("non-physical state: |tr rho - 1| = {trace_error:.3e}")]
    NonPhysical { trace_error: f64 },

    #[error("unknown figure preset `{0}`")]
    UnknownPreset(String),

    /// A parameter or axis failed domain validation.
    #[error("invalid {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
