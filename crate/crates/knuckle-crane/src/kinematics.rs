//! World-frame payload kinematics.
//!
//! Frame convention: right-handed, z up, origin at the boom pivot on the
//! tower axis; at slew angle zero the boom points along +x. The radial
//! swing `theta2` tilts the cable outward along the arm direction, the
//! tangential swing `theta1` tilts it sideways.

use nalgebra::{Matrix3x6, Vector3, Vector6};

use crate::params::CraneParams;
use crate::state::GeneralizedState;

/// Default step for the payload Jacobian central differences.
pub const JACOBIAN_FD_STEP: f64 = 1e-7;

/// Cartesian payload position.
///
/// Vertical component: `l_b sin b + l_j sin g - d cos t1 cos t2`.
pub fn payload_position(p: &CraneParams, s: &GeneralizedState) -> Vector3<f64> {
    payload_position_q(p, &s.q)
}

fn payload_position_q(p: &CraneParams, q: &Vector6<f64>) -> Vector3<f64> {
    let (sa, ca) = q[0].sin_cos();
    let (sb, cb) = q[1].sin_cos();
    let (sg, cg) = q[2].sin_cos();
    let d = q[3];
    let (s1, c1) = q[4].sin_cos();
    let (s2, c2) = q[5].sin_cos();

    let radial = p.l_b * cb + p.l_j * cg + d * s2;
    let tangential = d * s1 * c2;
    Vector3::new(
        ca * radial - sa * tangential,
        sa * radial + ca * tangential,
        p.l_b * sb + p.l_j * sg - d * c1 * c2,
    )
}

/// 3x6 Jacobian of the payload position with respect to `q`, by central
/// finite differences with step [`JACOBIAN_FD_STEP`].
pub fn payload_jacobian(p: &CraneParams, s: &GeneralizedState) -> Matrix3x6<f64> {
    let h = JACOBIAN_FD_STEP;
    let mut jac = Matrix3x6::zeros();
    for j in 0..6 {
        let mut qp = s.q;
        let mut qm = s.q;
        qp[j] += h;
        qm[j] -= h;
        let col = (payload_position_q(p, &qp) - payload_position_q(p, &qm)) / (2.0 * h);
        jac.set_column(j, &col);
    }
    jac
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Vector6;

    #[test]
    fn height_at_zero_swing() {
        let p = CraneParams::reference();
        let q = Vector6::new(0.0, 0.35, 0.2, 2.0, 0.0, 0.0);
        let pos = payload_position(&p, &GeneralizedState::at_rest(q));
        let expect_z = 2.0 * 0.35_f64.sin() + 2.3 * 0.2_f64.sin() - 2.0;
        assert_relative_eq!(pos[2], expect_z, max_relative = 1e-14);
    }

    #[test]
    fn slew_rotation_leaves_height_unchanged() {
        let p = CraneParams::reference();
        let base = Vector6::new(0.0, 0.3, 0.25, 2.4, 0.2, -0.1);
        let mut rotated = base;
        rotated[0] += 1.234;
        let z0 = payload_position(&p, &GeneralizedState::at_rest(base))[2];
        let z1 = payload_position(&p, &GeneralizedState::at_rest(rotated))[2];
        assert_eq!(z0, z1);
        // and the horizontal radius is preserved
        let p0 = payload_position(&p, &GeneralizedState::at_rest(base));
        let p1 = payload_position(&p, &GeneralizedState::at_rest(rotated));
        assert_relative_eq!(
            p0.fixed_rows::<2>(0).norm(),
            p1.fixed_rows::<2>(0).norm(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn finite_difference_velocity_matches_jacobian_contraction() {
        // d/dt payload_position == J(q) qdot, sampled by central differences
        // along the coordinate flow
        let p = CraneParams::reference();
        let q = Vector6::new(0.6, 0.4, -0.2, 2.2, 0.25, -0.3);
        let qdot = Vector6::new(0.5, -0.3, 0.2, 0.6, -0.4, 0.7);
        let s = GeneralizedState::new(q, qdot);

        let v_jac = payload_jacobian(&p, &s) * qdot;

        let h = 1e-6;
        let sp = GeneralizedState::at_rest(q + qdot * h);
        let sm = GeneralizedState::at_rest(q - qdot * h);
        let v_fd = (payload_position(&p, &sp) - payload_position(&p, &sm)) / (2.0 * h);

        for i in 0..3 {
            assert_abs_diff_eq!(v_jac[i], v_fd[i], epsilon = 1e-6);
        }
    }

    #[test]
    fn payload_speed_reproduces_the_payload_kinetic_term() {
        // m/2 |d/dt payload_position|^2 must equal the payload part of the
        // direct kinetic-energy expansion; the payload mass appears only
        // there, so the part is isolated by zeroing m
        use crate::energy::kinetic_energy_direct;
        let p = CraneParams::reference();
        let q = Vector6::new(0.8, 0.45, -0.15, 3.1, 0.35, -0.28);
        let qdot = Vector6::new(0.4, -0.6, 0.3, 0.8, -0.5, 0.6);
        let s = GeneralizedState::new(q, qdot);

        let h = 1e-6;
        let sp = GeneralizedState::at_rest(q + qdot * h);
        let sm = GeneralizedState::at_rest(q - qdot * h);
        let v = (payload_position(&p, &sp) - payload_position(&p, &sm)) / (2.0 * h);

        let mut p0 = p;
        p0.m = 0.0;
        let payload_ke = kinetic_energy_direct(&p, &s) - kinetic_energy_direct(&p0, &s);
        let from_position = 0.5 * p.m * v.norm_squared();
        assert_relative_eq!(from_position, payload_ke, max_relative = 1e-6);
    }

    #[test]
    fn jacobian_d_column_points_down_the_cable_at_zero_swing() {
        let p = CraneParams::reference();
        let q = Vector6::new(0.0, 0.3, 0.2, 2.0, 0.0, 0.0);
        let jac = payload_jacobian(&p, &GeneralizedState::at_rest(q));
        assert_abs_diff_eq!(jac[(0, 3)], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(jac[(1, 3)], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(jac[(2, 3)], -1.0, epsilon = 1e-9);
    }
}
