//! Controllers: the nonlinear PD law with gravity compensation, and a
//! linear-quadratic regulator on the numerically linearized model.

pub mod linearize;
pub mod lqr;
pub mod riccati;

pub use linearize::{linearize, LinearModel, LINEARIZE_FD_STEP};
pub use lqr::{lqr_control, LqrController, LqrWeights};
pub use riccati::solve_care;

use crate::energy::{ErrorSignals, Setpoint};
use crate::error::{CraneError, Result};
use crate::params::CraneParams;
use crate::state::{ControlInput, GeneralizedState};

/// Proportional and derivative gains of the setpoint controller, one pair
/// per actuated coordinate. All eight must be strictly positive; the
/// stability argument needs every one of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlGains {
    pub kp_alpha: f64,
    pub kp_beta: f64,
    pub kp_gamma: f64,
    pub kp_d: f64,
    pub kd_alpha: f64,
    pub kd_beta: f64,
    pub kd_gamma: f64,
    pub kd_d: f64,
}

impl ControlGains {
    /// Gain set used by the bundled scenarios.
    pub fn reference() -> Self {
        Self {
            kp_alpha: 1e3,
            kp_beta: 1e4,
            kp_gamma: 1e4,
            kp_d: 1e3,
            kd_alpha: 1e2,
            kd_beta: 1e3,
            kd_gamma: 1e3,
            kd_d: 1e2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("kp_alpha", self.kp_alpha),
            ("kp_beta", self.kp_beta),
            ("kp_gamma", self.kp_gamma),
            ("kp_d", self.kp_d),
            ("kd_alpha", self.kd_alpha),
            ("kd_beta", self.kd_beta),
            ("kd_gamma", self.kd_gamma),
            ("kd_d", self.kd_d),
        ];
        for (name, value) in fields {
            if value <= 0.0 || !value.is_finite() {
                return Err(CraneError::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

/// PD feedback on the actuated coordinates plus static gravity
/// compensation:
///
/// ```text
/// u1 = kp_a e_a - kd_a da
/// u2 = kp_b e_b - kd_b db + g l_b cos(b) (m + m_b/2 + m_j)
/// u3 = kp_g e_g - kd_g dg + g l_j cos(g) (m + m_j/2)
/// u4 = kp_d e_d - kd_d dd - m g
/// ```
///
/// The gravity terms use the nominal parameters the controller believes,
/// and the measured state only; the law is a pure function with no
/// internal state.
pub fn pd_gravity_control(
    p_nominal: &CraneParams,
    s_measured: &GeneralizedState,
    sp: &Setpoint,
    k: &ControlGains,
) -> ControlInput {
    let e = ErrorSignals::between(sp, s_measured);
    let p = p_nominal;
    let u1 = k.kp_alpha * e.e_alpha - k.kd_alpha * s_measured.qdot[0];
    let u2 = k.kp_beta * e.e_beta - k.kd_beta * s_measured.qdot[1]
        + p.g * p.l_b * s_measured.beta().cos() * (p.m + 0.5 * p.m_b + p.m_j);
    let u3 = k.kp_gamma * e.e_gamma - k.kd_gamma * s_measured.qdot[2]
        + p.g * p.l_j * s_measured.gamma().cos() * (p.m + 0.5 * p.m_j);
    let u4 = k.kp_d * e.e_d - k.kd_d * s_measured.qdot[3] - p.m * p.g;
    ControlInput::new(u1, u2, u3, u4)
}

/// Which feedback law closes the loop in a scenario run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControllerKind {
    PdGravity,
    Lqr,
}
