//! LQR baseline: state feedback around the gravity-compensated
//! equilibrium of the linearized model.

use nalgebra::{DMatrix, SMatrix};

use crate::control::linearize::LinearModel;
use crate::control::riccati::solve_care;
use crate::error::{CraneError, Result};
use crate::state::{ControlInput, GeneralizedState};

/// Diagonal LQR weights on the 12 states
/// `[alpha, beta, gamma, d, theta1, theta2, and the six rates]` and the
/// four inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LqrWeights {
    pub q: [f64; 12],
    pub r: [f64; 4],
}

impl Default for LqrWeights {
    /// Weights used by the bundled comparison scenarios.
    fn default() -> Self {
        Self {
            q: [
                100.0, 1000.0, 1000.0, 25.0, 10.0, 10.0, 10.0, 10.0, 10.0, 50.0, 100.0, 100.0,
            ],
            r: [50.0, 50.0, 50.0, 10.0],
        }
    }
}

impl LqrWeights {
    pub fn validate(&self) -> Result<()> {
        if self.q.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(CraneError::Config(
                "LQR state weights must be nonnegative".into(),
            ));
        }
        if self.r.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
            return Err(CraneError::Config(
                "LQR input weights must be strictly positive".into(),
            ));
        }
        Ok(())
    }
}

/// A solved LQR design: the linear model it was built on, the Riccati
/// solution and the feedback gain.
#[derive(Debug, Clone)]
pub struct LqrController {
    pub model: LinearModel,
    pub riccati: SMatrix<f64, 12, 12>,
    pub gain: SMatrix<f64, 4, 12>,
}

impl LqrController {
    /// Design the regulator for a linearized model.
    pub fn design(model: LinearModel, weights: &LqrWeights) -> Result<Self> {
        weights.validate()?;
        let a = DMatrix::from_fn(12, 12, |i, j| model.a[(i, j)]);
        let b = DMatrix::from_fn(12, 4, |i, j| model.b[(i, j)]);
        let q = DMatrix::from_fn(12, 12, |i, j| if i == j { weights.q[i] } else { 0.0 });
        let r = DMatrix::from_fn(4, 4, |i, j| if i == j { weights.r[i] } else { 0.0 });
        let (p, k) = solve_care(&a, &b, &q, &r)?;
        Ok(Self {
            model,
            riccati: SMatrix::from_fn(|i, j| p[(i, j)]),
            gain: SMatrix::from_fn(|i, j| k[(i, j)]),
        })
    }

    /// Evaluate the feedback law at a measured state.
    pub fn control(&self, s_measured: &GeneralizedState) -> ControlInput {
        lqr_control(&self.model, &self.gain, s_measured)
    }
}

/// `u = u_eq - K (x - x_eq)`.
///
/// The feedback acts on the deviation from the linearization point; the
/// equilibrium feedforward `u_eq` holds the crane against gravity, which a
/// raw `-Kx` law cannot.
pub fn lqr_control(
    model: &LinearModel,
    gain: &SMatrix<f64, 4, 12>,
    s_measured: &GeneralizedState,
) -> ControlInput {
    let dx = LinearModel::x_from_state(s_measured) - model.x_eq;
    let u = model.u_eq - gain * dx;
    ControlInput { u }
}
