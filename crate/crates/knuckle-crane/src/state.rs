//! Generalized coordinates, velocities and control inputs.

use nalgebra::{Vector4, Vector6};

use crate::error::{CraneError, Result};

/// Hard lower bound on the cable length \[m\]; below this the inertia matrix
/// degenerates.
pub const D_MIN: f64 = 0.01;

/// Swing / luff angle limit \[rad\]: the model is used on |angle| < pi/2.
pub const ANGLE_LIMIT: f64 = std::f64::consts::FRAC_PI_2;

/// Generalized state `q = [alpha, beta, gamma, d, theta1, theta2]` and its
/// time derivative.
///
/// `alpha` slews the tower, `beta` luffs the boom, `gamma` luffs the jib,
/// `d` is the cable length, `theta1`/`theta2` are the tangential and radial
/// payload swing angles. Angles in rad, `d` in m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedState {
    pub q: Vector6<f64>,
    pub qdot: Vector6<f64>,
}

impl GeneralizedState {
    pub fn new(q: Vector6<f64>, qdot: Vector6<f64>) -> Self {
        Self { q, qdot }
    }

    /// State at rest in the given pose.
    pub fn at_rest(q: Vector6<f64>) -> Self {
        Self {
            q,
            qdot: Vector6::zeros(),
        }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.q[0]
    }
    #[inline]
    pub fn beta(&self) -> f64 {
        self.q[1]
    }
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.q[2]
    }
    #[inline]
    pub fn d(&self) -> f64 {
        self.q[3]
    }
    #[inline]
    pub fn theta1(&self) -> f64 {
        self.q[4]
    }
    #[inline]
    pub fn theta2(&self) -> f64 {
        self.q[5]
    }

    /// Check the domain the model and controller are valid on:
    /// |theta_i| < pi/2, |beta| < pi/2, |gamma| < pi/2, d >= D_MIN,
    /// and finite values throughout.
    pub fn check_admissible(&self) -> Result<()> {
        for (i, name) in COORD_NAMES.iter().enumerate() {
            if !self.q[i].is_finite() || !self.qdot[i].is_finite() {
                return Err(CraneError::DomainViolation {
                    coordinate: name,
                    value: self.q[i],
                    limit: f64::INFINITY,
                    time: None,
                });
            }
        }
        let angle_bounds = [
            ("beta", self.beta()),
            ("gamma", self.gamma()),
            ("theta1", self.theta1()),
            ("theta2", self.theta2()),
        ];
        for (name, value) in angle_bounds {
            if value.abs() >= ANGLE_LIMIT {
                return Err(CraneError::DomainViolation {
                    coordinate: name,
                    value,
                    limit: ANGLE_LIMIT,
                    time: None,
                });
            }
        }
        if self.d() < D_MIN {
            return Err(CraneError::DomainViolation {
                coordinate: "d",
                value: self.d(),
                limit: D_MIN,
                time: None,
            });
        }
        Ok(())
    }
}

pub(crate) const COORD_NAMES: [&str; 6] = ["alpha", "beta", "gamma", "d", "theta1", "theta2"];

/// Actuator efforts `[u1, u2, u3, u4]`: slew torque, boom luff torque, jib
/// luff torque, cable force. The swing coordinates are unactuated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlInput {
    pub u: Vector4<f64>,
}

impl ControlInput {
    pub fn new(u1: f64, u2: f64, u3: f64, u4: f64) -> Self {
        Self {
            u: Vector4::new(u1, u2, u3, u4),
        }
    }

    pub fn zero() -> Self {
        Self {
            u: Vector4::zeros(),
        }
    }

    /// Generalized force vector: inputs on the four actuated coordinates,
    /// zero on the two swing coordinates.
    #[inline]
    pub fn zeta(&self) -> Vector6<f64> {
        Vector6::new(self.u[0], self.u[1], self.u[2], self.u[3], 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().all(|v| v.is_finite())
    }
}
