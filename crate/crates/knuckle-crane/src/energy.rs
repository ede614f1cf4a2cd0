//! Energies, the storage function used for control design, and the
//! Lyapunov instrumentation of the closed loop.

use crate::control::ControlGains;
use crate::dynamics::mass_matrix;
use crate::error::{CraneError, Result};
use crate::params::CraneParams;
use crate::state::{GeneralizedState, ANGLE_LIMIT, D_MIN};

/// Desired references for the four actuated coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setpoint {
    pub alpha_d: f64,
    pub beta_d: f64,
    pub gamma_d: f64,
    pub d_d: f64,
}

impl Setpoint {
    pub fn new(alpha_d: f64, beta_d: f64, gamma_d: f64, d_d: f64) -> Self {
        Self {
            alpha_d,
            beta_d,
            gamma_d,
            d_d,
        }
    }

    /// The setpoint must lie strictly inside the admissible region.
    pub fn validate(&self) -> Result<()> {
        if !self.alpha_d.is_finite() {
            return Err(CraneError::Config("setpoint alpha_d not finite".into()));
        }
        for (name, v) in [("beta_d", self.beta_d), ("gamma_d", self.gamma_d)] {
            if !v.is_finite() || v.abs() >= ANGLE_LIMIT {
                return Err(CraneError::Config(format!(
                    "setpoint {name} = {v} outside (-pi/2, pi/2)"
                )));
            }
        }
        if !self.d_d.is_finite() || self.d_d < D_MIN {
            return Err(CraneError::Config(format!(
                "setpoint d_d = {} below minimum cable length {}",
                self.d_d, D_MIN
            )));
        }
        Ok(())
    }
}

/// Tracking errors `e_x = x_d - x` on the actuated coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSignals {
    pub e_alpha: f64,
    pub e_beta: f64,
    pub e_gamma: f64,
    pub e_d: f64,
}

impl ErrorSignals {
    pub fn between(sp: &Setpoint, s: &GeneralizedState) -> Self {
        Self {
            e_alpha: sp.alpha_d - s.alpha(),
            e_beta: sp.beta_d - s.beta(),
            e_gamma: sp.gamma_d - s.gamma(),
            e_d: sp.d_d - s.d(),
        }
    }
}

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

/// Kinetic energy as the quadratic form `1/2 qdot' M(q) qdot`.
///
/// This is the path the simulator and instrumentation use.
pub fn kinetic_energy(p: &CraneParams, s: &GeneralizedState) -> f64 {
    let m = mass_matrix(p, &s.q);
    0.5 * s.qdot.dot(&(m * s.qdot))
}

/// Kinetic energy by direct evaluation of the link and payload velocity
/// expansions (boom and jib center-of-mass velocities, payload velocity in
/// the world frame, plus the three rotor terms).
///
/// Kept as a fully separate arithmetic path; the property suite checks it
/// against [`kinetic_energy`] to tight relative tolerance.
#[rustfmt::skip]
pub fn kinetic_energy_direct(p: &CraneParams, s: &GeneralizedState) -> f64 {
    let (sa, ca) = s.alpha().sin_cos();
    let (sb, cb) = s.beta().sin_cos();
    let (sg, cg) = s.gamma().sin_cos();
    let (s1, c1) = s.theta1().sin_cos();
    let (s2, c2) = s.theta2().sin_cos();
    let d = s.d();
    let (da, db, dg, dd, dt1, dt2) = (
        s.qdot[0], s.qdot[1], s.qdot[2], s.qdot[3], s.qdot[4], s.qdot[5],
    );
    let (m, mb, mj, lb, lj) = (p.m, p.m_b, p.m_j, p.l_b, p.l_j);
    let (it, ib, ij) = (p.i_tot, p.i_b, p.i_j);

    // payload velocity components in the world frame
    let v1 = c2*sa*s1*dd - ca*s2*dd + lb*cb*sa*da + lb*ca*sb*db + lj*cg*sa*da
        + lj*ca*sg*dg - ca*c2*dt2*d + sa*s2*da*d + ca*c2*s1*da*d
        + c1*c2*sa*dt1*d - sa*s1*s2*dt2*d;
    let v2 = lb*cb*db - c1*c2*dd + lj*cg*dg + c2*s1*dt1*d + c1*s2*dt2*d;
    let v3 = sa*s2*dd + lb*ca*cb*da + lj*ca*cg*da - lb*sa*sb*db - lj*sa*sg*dg
        + ca*s2*da*d + c2*sa*dt2*d + ca*c2*s1*dd + ca*c1*c2*dt1*d
        - c2*sa*s1*da*d - ca*s1*s2*dt2*d;

    0.125*mb*(sq(lb*cb*sa*da + lb*ca*sb*db)
            + sq(lb*ca*cb*da - lb*sa*sb*db)
            + lb*lb*cb*cb*db*db)
        + 0.5*mj*(sq(lb*cb*sa*da + lb*ca*sb*db + 0.5*lj*cg*sa*da + 0.5*lj*ca*sg*dg)
            + sq(lb*ca*cb*da + 0.5*lj*ca*cg*da - lb*sa*sb*db - 0.5*lj*sa*sg*dg)
            + sq(lb*cb*db + 0.5*lj*cg*dg))
        + 0.5*m*(v1*v1 + v2*v2 + v3*v3)
        + 0.5*it*da*da + 0.5*ib*db*db + 0.5*ij*dg*dg
}

/// Potential energy relative to the boom pivot height:
/// `U = g m (l_b sin b + l_j sin g - d cos t1 cos t2)
///    + g m_j (l_b sin b + l_j sin g / 2) + g l_b m_b sin b / 2`.
pub fn potential_energy(p: &CraneParams, s: &GeneralizedState) -> f64 {
    let sb = s.beta().sin();
    let sg = s.gamma().sin();
    let (c1, c2) = (s.theta1().cos(), s.theta2().cos());
    let d = s.d();
    p.g * p.m * (p.l_b * sb + p.l_j * sg - c1 * c2 * d)
        + p.g * p.m_j * (p.l_b * sb + 0.5 * p.l_j * sg)
        + 0.5 * p.g * p.l_b * p.m_b * sb
}

/// Storage function for the control design: kinetic energy plus the
/// payload swing potential `m g d (1 - cos t1 cos t2)`.
///
/// Nonnegative on the admissible domain and zero exactly at rest with the
/// cable hanging straight down.
pub fn energy_function(p: &CraneParams, s: &GeneralizedState) -> f64 {
    kinetic_energy(p, s) + p.m * p.g * s.d() * (1.0 - s.theta1().cos() * s.theta2().cos())
}

/// Lyapunov candidate: storage function plus quadratic penalties on the
/// actuated tracking errors.
pub fn lyapunov_v(p: &CraneParams, s: &GeneralizedState, sp: &Setpoint, k: &ControlGains) -> f64 {
    let e = ErrorSignals::between(sp, s);
    energy_function(p, s)
        + 0.5 * k.kp_alpha * sq(e.e_alpha)
        + 0.5 * k.kp_beta * sq(e.e_beta)
        + 0.5 * k.kp_gamma * sq(e.e_gamma)
        + 0.5 * k.kp_d * sq(e.e_d)
}

/// Closed-loop rate of the Lyapunov candidate under the PD + gravity
/// compensation law: `-kd_a da^2 - kd_b db^2 - kd_g dg^2 - kd_d dd^2`,
/// nonpositive by construction.
pub fn lyapunov_vdot_analytic(s: &GeneralizedState, k: &ControlGains) -> f64 {
    -(k.kd_alpha * sq(s.qdot[0])
        + k.kd_beta * sq(s.qdot[1])
        + k.kd_gamma * sq(s.qdot[2])
        + k.kd_d * sq(s.qdot[3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Vector6;

    fn p() -> CraneParams {
        CraneParams::reference()
    }

    #[test]
    fn kinetic_energy_zero_at_rest() {
        let s = GeneralizedState::at_rest(Vector6::new(0.1, 0.2, 0.3, 2.0, 0.05, -0.02));
        assert_eq!(kinetic_energy(&p(), &s), 0.0);
        assert_eq!(kinetic_energy_direct(&p(), &s), 0.0);
    }

    #[test]
    fn pure_slew_spin_matches_m11() {
        // at the zero pose the d^2 m terms cancel and m11 reduces to
        // i_tot + a1 + a2 + a3
        let params = p();
        let s = GeneralizedState::new(
            Vector6::new(0.0, 0.0, 0.0, 2.0, 0.0, 0.0),
            Vector6::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        );
        let expect = 0.5 * (params.i_tot + params.a1() + params.a2() + params.a3());
        assert_relative_eq!(kinetic_energy(&params, &s), expect, max_relative = 1e-12);
        assert_relative_eq!(
            kinetic_energy_direct(&params, &s),
            expect,
            max_relative = 1e-12
        );
    }

    #[test]
    fn potential_energy_at_zero_angles_is_payload_term() {
        let s = GeneralizedState::at_rest(Vector6::new(0.0, 0.0, 0.0, 2.0, 0.0, 0.0));
        assert_relative_eq!(potential_energy(&p(), &s), -1962.0, max_relative = 1e-14);
    }

    #[test]
    fn potential_energy_even_in_swing_angles() {
        let sa = GeneralizedState::at_rest(Vector6::new(0.0, 0.3, 0.2, 2.0, 0.25, -0.15));
        let sb = GeneralizedState::at_rest(Vector6::new(0.0, 0.3, 0.2, 2.0, -0.25, 0.15));
        assert_eq!(potential_energy(&p(), &sa), potential_energy(&p(), &sb));
    }

    #[test]
    fn potential_energy_hand_evaluated_pose() {
        // beta = 30 deg, gamma = 22 deg, theta = 0, d = 2, reference rig;
        // frozen from an independent 50-digit evaluation of the height sum
        let q = Vector6::new(
            0.0,
            30.0_f64.to_radians(),
            22.0_f64.to_radians(),
            2.0,
            0.0,
            0.0,
        );
        let s = GeneralizedState::at_rest(q);
        assert_relative_eq!(
            potential_energy(&p(), &s),
            4844.755927629725,
            max_relative = 1e-12
        );
    }

    #[test]
    fn energy_function_zero_iff_rest_and_no_swing() {
        let params = p();
        let rest = GeneralizedState::at_rest(Vector6::new(0.4, 0.1, -0.2, 2.0, 0.0, 0.0));
        assert_eq!(energy_function(&params, &rest), 0.0);

        let swung = GeneralizedState::at_rest(Vector6::new(0.4, 0.1, -0.2, 2.0, 0.2, 0.1));
        let expect = 100.0 * 9.81 * 2.0 * (1.0 - 0.2_f64.cos() * 0.1_f64.cos());
        assert_relative_eq!(
            energy_function(&params, &swung),
            expect,
            max_relative = 1e-12
        );
        assert!(energy_function(&params, &swung) > 0.0);
    }

    #[test]
    fn energy_and_lyapunov_nonnegative_on_the_admissible_domain() {
        use rand::SeedableRng;
        let params = p();
        let k = ControlGains::reference();
        let sp = Setpoint::new(0.5, 0.2, 0.1, 2.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let s = crate::verify::sample_admissible(&mut rng);
            let e = energy_function(&params, &s);
            assert!(e >= 0.0, "E = {e} at q = {:?}", s.q.as_slice());
            assert!(lyapunov_v(&params, &s, &sp, &k) >= e);
        }
    }

    #[test]
    fn lyapunov_single_error_term() {
        let params = p();
        let k = ControlGains::reference();
        let sp = Setpoint::new(0.1, 0.0, 0.0, 2.0);
        let s = GeneralizedState::at_rest(Vector6::new(0.0, 0.0, 0.0, 2.0, 0.0, 0.0));
        // kp_alpha = 1e3, e_alpha = 0.1 -> V = 5
        assert_relative_eq!(lyapunov_v(&params, &s, &sp, &k), 5.0, max_relative = 1e-12);

        // and exactly zero at the target equilibrium
        let at_target = GeneralizedState::at_rest(Vector6::new(0.1, 0.0, 0.0, 2.0, 0.0, 0.0));
        assert_eq!(lyapunov_v(&params, &at_target, &sp, &k), 0.0);
    }

    #[test]
    fn vdot_analytic_values() {
        let k = ControlGains::reference();
        let rest = GeneralizedState::at_rest(Vector6::new(0.0, 0.0, 0.0, 2.0, 0.0, 0.0));
        assert_eq!(lyapunov_vdot_analytic(&rest, &k), 0.0);

        let mut s = rest;
        s.qdot[0] = 1.0;
        assert_abs_diff_eq!(lyapunov_vdot_analytic(&s, &k), -100.0);
        assert!(lyapunov_vdot_analytic(&s, &k) <= 0.0);
    }
}
