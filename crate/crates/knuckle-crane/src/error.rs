//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CraneError {
    /// A physical parameter failed validation.
    #[error("parameter `{name}` must be strictly positive, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// The state left the admissible region the model is valid on.
    #[error("domain violation: {coordinate} = {value:.6} outside |{coordinate}| < {limit:.6}{}",
            time.map(|t| format!(" at t = {t:.4} s")).unwrap_or_default())]
    DomainViolation {
        coordinate: &'static str,
        value: f64,
        limit: f64,
        time: Option<f64>,
    },

    /// The inertia matrix could not be solved reliably.
    #[error("mass matrix numerically singular (condition estimate {cond:.3e})")]
    SingularMassMatrix { cond: f64 },

    /// The supposed equilibrium does not zero the state derivative.
    #[error("equilibrium residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    EquilibriumResidual { residual: f64, tolerance: f64 },

    /// Riccati solver failed to reach the residual target.
    #[error(
        "Riccati iteration did not converge: residual {residual:.3e} after {iterations} iterations"
    )]
    RiccatiNoConvergence { residual: f64, iterations: usize },

    /// The computed state feedback does not stabilize the linear model.
    #[error("closed loop unstable: spectral abscissa {max_re:.3e} >= 0")]
    RiccatiUnstable { max_re: f64 },

    /// Bad run configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A controller produced a non-finite input.
    #[error("control input is not finite at t = {time:.4} s")]
    NonFiniteInput { time: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CraneError {
    /// Attach a simulation time stamp to domain violations raised mid-run.
    pub(crate) fn at_time(self, t: f64) -> Self {
        match self {
            CraneError::DomainViolation {
                coordinate,
                value,
                limit,
                ..
            } => CraneError::DomainViolation {
                coordinate,
                value,
                limit,
                time: Some(t),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, CraneError>;
