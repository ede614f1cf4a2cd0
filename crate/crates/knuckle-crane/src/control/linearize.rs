//! Numerical linearization of the closed-form dynamics around a
//! gravity-compensated equilibrium.

use nalgebra::{SMatrix, SVector, Vector4, Vector6};

use crate::control::pd_gravity_control;
use crate::control::ControlGains;
use crate::dynamics::forward_dynamics;
use crate::energy::Setpoint;
use crate::error::{CraneError, Result};
use crate::params::CraneParams;
use crate::state::{ControlInput, GeneralizedState};

/// Default central-difference step per coordinate.
pub const LINEARIZE_FD_STEP: f64 = 1e-6;

const EQUILIBRIUM_TOL: f64 = 1e-8;

/// Linear model `xdot = A (x - x_eq) + B (u - u_eq)` of the crane around a
/// setpoint, with state `x = [q; qdot]` ordered as
/// `[alpha, beta, gamma, d, theta1, theta2, and the six rates]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub a: SMatrix<f64, 12, 12>,
    pub b: SMatrix<f64, 12, 4>,
    pub x_eq: SVector<f64, 12>,
    pub u_eq: Vector4<f64>,
}

impl LinearModel {
    /// Split a 12-state vector back into a generalized state.
    pub fn state_from_x(x: &SVector<f64, 12>) -> GeneralizedState {
        GeneralizedState::new(
            Vector6::from_row_slice(&x.as_slice()[0..6]),
            Vector6::from_row_slice(&x.as_slice()[6..12]),
        )
    }

    pub fn x_from_state(s: &GeneralizedState) -> SVector<f64, 12> {
        let mut x = SVector::<f64, 12>::zeros();
        x.fixed_rows_mut::<6>(0).copy_from(&s.q);
        x.fixed_rows_mut::<6>(6).copy_from(&s.qdot);
        x
    }
}

/// Linearize the crane dynamics at the rest pose of a setpoint with zero
/// swing, around the gravity-compensating input.
///
/// The kinematic rows of `A` are the identity block `[0 I]` exactly and
/// the corresponding rows of `B` are zero; the acceleration rows come from
/// central finite differences of the nonlinear forward dynamics with step
/// `h` per coordinate. Fails if the claimed equilibrium does not zero the
/// state derivative to within 1e-8.
pub fn linearize(p: &CraneParams, sp: &Setpoint, h: f64) -> Result<LinearModel> {
    sp.validate()?;
    p.validate()?;

    let q_eq = Vector6::new(sp.alpha_d, sp.beta_d, sp.gamma_d, sp.d_d, 0.0, 0.0);
    let s_eq = GeneralizedState::at_rest(q_eq);
    // zero-error PD output reduces to the pure gravity feedforward
    let gains = ControlGains::reference();
    let u_eq = pd_gravity_control(p, &s_eq, sp, &gains).u;

    let qdd_eq = forward_dynamics(p, &s_eq, &ControlInput { u: u_eq })?;
    let residual = qdd_eq.norm();
    if residual > EQUILIBRIUM_TOL {
        return Err(CraneError::EquilibriumResidual {
            residual,
            tolerance: EQUILIBRIUM_TOL,
        });
    }

    let x_eq = LinearModel::x_from_state(&s_eq);
    let mut a = SMatrix::<f64, 12, 12>::zeros();
    let mut b = SMatrix::<f64, 12, 4>::zeros();

    // kinematic identity rows: d(q)/dt = qdot
    for i in 0..6 {
        a[(i, 6 + i)] = 1.0;
    }

    // acceleration rows by central differences in each state coordinate
    let u_hold = ControlInput { u: u_eq };
    for j in 0..12 {
        let mut xp = x_eq;
        let mut xm = x_eq;
        xp[j] += h;
        xm[j] -= h;
        let fp = forward_dynamics(p, &LinearModel::state_from_x(&xp), &u_hold)?;
        let fm = forward_dynamics(p, &LinearModel::state_from_x(&xm), &u_hold)?;
        let col = (fp - fm) / (2.0 * h);
        for i in 0..6 {
            a[(6 + i, j)] = col[i];
        }
    }

    // input columns
    for j in 0..4 {
        let mut up = u_eq;
        let mut um = u_eq;
        up[j] += h;
        um[j] -= h;
        let fp = forward_dynamics(p, &s_eq, &ControlInput { u: up })?;
        let fm = forward_dynamics(p, &s_eq, &ControlInput { u: um })?;
        let col = (fp - fm) / (2.0 * h);
        for i in 0..6 {
            b[(6 + i, j)] = col[i];
        }
    }

    Ok(LinearModel { a, b, x_eq, u_eq })
}
