//! Rigid-body terms of the crane model and forward dynamics.
//!
//! The model has the standard manipulator structure
//! `M(q) qddot + C(q, qdot) qdot + g(q) = zeta` with a 6x6 symmetric
//! positive definite inertia matrix, a Coriolis matrix in Christoffel form
//! and a gravity vector that is the gradient of the potential energy. Two
//! structural facts are load-bearing for the controller analysis and are
//! enforced by the property suite: `1/2 Mdot - C` is skew symmetric, and
//! the slew gravity component is identically zero.

mod entries;
pub mod scalar;

pub use entries::{coriolis_matrix, gravity_vector, mass_matrix, mass_matrix_rate};
pub use scalar::scalar_eom_residual;

use nalgebra::{Matrix6, Vector6};

use crate::energy::potential_energy;
use crate::error::{CraneError, Result};
use crate::params::CraneParams;
use crate::state::{ControlInput, GeneralizedState};

/// Condition-estimate ceiling for the inertia-matrix solve.
pub const MASS_COND_LIMIT: f64 = 1e12;

/// Default central-difference step for gradient checks.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Assembled dynamics terms at one state.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsTerms {
    /// Inertia matrix, symmetric positive definite.
    pub m: Matrix6<f64>,
    /// Coriolis/centripetal matrix (Christoffel form), linear in `qdot`.
    pub c: Matrix6<f64>,
    /// Gravity vector; first component identically zero.
    pub gvec: Vector6<f64>,
}

/// Assemble M, C and g at an admissible state.
pub fn assemble_terms(p: &CraneParams, s: &GeneralizedState) -> Result<DynamicsTerms> {
    s.check_admissible()?;
    Ok(assemble_terms_unchecked(p, s))
}

/// Assembly without the admissibility guard.
///
/// The closed forms stay valid for |beta|, |gamma| beyond pi/2 and for any
/// theta1; the matrix only degenerates at d -> 0 or |theta2| -> pi/2.
/// Used by conservative-motion audits that swing links through the
/// controller's operating range.
pub fn assemble_terms_unchecked(p: &CraneParams, s: &GeneralizedState) -> DynamicsTerms {
    DynamicsTerms {
        m: entries::mass_matrix(p, &s.q),
        c: entries::coriolis_matrix(p, &s.q, &s.qdot),
        gvec: entries::gravity_vector(p, &s.q),
    }
}

/// Generalized accelerations `qddot = M^-1 (zeta - C qdot - g)`.
pub fn forward_dynamics(
    p: &CraneParams,
    s: &GeneralizedState,
    u: &ControlInput,
) -> Result<Vector6<f64>> {
    let terms = assemble_terms(p, s)?;
    let rhs = u.zeta() - terms.c * s.qdot - terms.gvec;
    solve_mass(&terms.m, &rhs)
}

/// Forward dynamics with an extra generalized force on the right-hand side
/// (external disturbances mapped through a Jacobian transpose).
pub fn forward_dynamics_forced(
    p: &CraneParams,
    s: &GeneralizedState,
    u: &ControlInput,
    extra: &Vector6<f64>,
) -> Result<Vector6<f64>> {
    let terms = assemble_terms(p, s)?;
    let rhs = u.zeta() + extra - terms.c * s.qdot - terms.gvec;
    solve_mass(&terms.m, &rhs)
}

pub(crate) fn forward_dynamics_unchecked(
    p: &CraneParams,
    s: &GeneralizedState,
    u: &ControlInput,
    extra: &Vector6<f64>,
) -> Result<Vector6<f64>> {
    let terms = assemble_terms_unchecked(p, s);
    let rhs = u.zeta() + extra - terms.c * s.qdot - terms.gvec;
    solve_mass(&terms.m, &rhs)
}

/// Solve `M x = rhs` by Cholesky with a pivoted LU fallback, guarding on a
/// cheap condition estimate. Failure signals that the state drifted toward
/// the degenerate boundary (d -> 0 or |theta2| -> pi/2).
pub(crate) fn solve_mass(m: &Matrix6<f64>, rhs: &Vector6<f64>) -> Result<Vector6<f64>> {
    if let Some(chol) = m.cholesky() {
        let l = chol.l_dirty();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for i in 0..6 {
            let v = l[(i, i)];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        // (max diag / min diag)^2 bounds kappa(M) from below
        let cond = (hi / lo) * (hi / lo);
        if cond > MASS_COND_LIMIT {
            return Err(CraneError::SingularMassMatrix { cond });
        }
        return Ok(chol.solve(rhs));
    }
    let lu = m.full_piv_lu();
    let uu = lu.u();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0_f64;
    for i in 0..6 {
        let v = uu[(i, i)].abs();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if cond > MASS_COND_LIMIT {
        return Err(CraneError::SingularMassMatrix { cond });
    }
    lu.solve(rhs).ok_or(CraneError::SingularMassMatrix { cond })
}

/// Gravity vector by central finite differences of the potential energy,
/// `(dU/dq)_i = (U(q + h e_i) - U(q - h e_i)) / 2h`.
///
/// Serves as the oracle for the assembled gravity vector.
pub fn gravity_from_potential(
    p: &CraneParams,
    s: &GeneralizedState,
    h: f64,
) -> Result<Vector6<f64>> {
    s.check_admissible()?;
    let mut grad = Vector6::zeros();
    for i in 0..6 {
        let mut qp = s.q;
        let mut qm = s.q;
        qp[i] += h;
        qm[i] -= h;
        let up = potential_energy(p, &GeneralizedState::at_rest(qp));
        let um = potential_energy(p, &GeneralizedState::at_rest(qm));
        grad[i] = (up - um) / (2.0 * h);
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Vector6;

    fn state(q: [f64; 6], qdot: [f64; 6]) -> GeneralizedState {
        GeneralizedState::new(Vector6::from_row_slice(&q), Vector6::from_row_slice(&qdot))
    }

    #[test]
    fn payload_row_of_mass_matrix_is_the_payload_mass() {
        let p = CraneParams::reference();
        let s = state([0.0, 0.0, 0.0, 2.0, 0.0, 0.0], [0.0; 6]);
        let t = assemble_terms(&p, &s).unwrap();
        assert_eq!(t.m[(3, 3)], 100.0);
    }

    #[test]
    fn coriolis_vanishes_at_rest() {
        let p = CraneParams::reference();
        let s = state([0.3, 0.2, -0.1, 2.0, 0.1, -0.2], [0.0; 6]);
        let t = assemble_terms(&p, &s).unwrap();
        assert_eq!(t.c, nalgebra::Matrix6::zeros());
    }

    #[test]
    fn gravity_at_zero_pose() {
        let p = CraneParams::reference();
        let s = state([0.0, 0.0, 0.0, 2.0, 0.0, 0.0], [0.0; 6]);
        let t = assemble_terms(&p, &s).unwrap();
        // boom row: g l_b (m + m_b/2 + m_j)
        assert_relative_eq!(t.gvec[1], 9.81 * 2.0 * 500.0, max_relative = 1e-14);
        assert_eq!(t.gvec[0], 0.0);
        // hoist row carries the payload weight
        assert_relative_eq!(t.gvec[3], -981.0, max_relative = 1e-14);
    }

    #[test]
    fn structural_zeros_hold_everywhere() {
        let p = CraneParams::reference();
        let s = state(
            [0.7, 0.4, -0.3, 3.0, 0.5, -0.6],
            [0.4, -0.2, 0.15, 0.8, -0.5, 0.3],
        );
        let t = assemble_terms(&p, &s).unwrap();
        for (i, j) in [(3, 4), (3, 5), (4, 5)] {
            assert_eq!(t.m[(i, j)], 0.0);
            assert_eq!(t.m[(j, i)], 0.0);
        }
        assert_eq!(t.c[(3, 3)], 0.0);
        assert_eq!(t.gvec[0], 0.0);
    }

    #[test]
    fn gravity_gradient_in_d_at_zero_swing() {
        let p = CraneParams::reference();
        let s = state([0.0, 0.0, 0.0, 2.0, 0.0, 0.0], [0.0; 6]);
        let grad = gravity_from_potential(&p, &s, DEFAULT_FD_STEP).unwrap();
        assert_abs_diff_eq!(grad[0], 0.0, epsilon = 1e-9); // independent of slew
        assert_relative_eq!(grad[3], -981.0, max_relative = 1e-9);
        assert_abs_diff_eq!(grad[4], 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(grad[5], 0.0, epsilon = 1e-6);
    }

    #[test]
    fn forward_dynamics_closes_the_residual() {
        let p = CraneParams::reference();
        let s = state(
            [0.5, 0.35, -0.25, 2.5, 0.3, -0.4],
            [0.3, -0.5, 0.2, 0.7, -0.3, 0.45],
        );
        let u = ControlInput::new(120.0, -800.0, 430.0, -250.0);
        let qddot = forward_dynamics(&p, &s, &u).unwrap();
        let t = assemble_terms(&p, &s).unwrap();
        let resid = t.m * qddot + t.c * s.qdot + t.gvec - u.zeta();
        assert!(resid.norm() < 1e-8, "residual {}", resid.norm());
    }

    #[test]
    fn equilibrium_under_gravity_compensation() {
        // at rest with zero swing, inputs matching the gravity vector give
        // zero acceleration
        let p = CraneParams::reference();
        let q = Vector6::new(0.9, 0.5, 0.38, 2.0, 0.0, 0.0);
        let s = GeneralizedState::at_rest(q);
        let g = gravity_vector(&p, &q);
        let u = ControlInput::new(g[0], g[1], g[2], g[3]);
        let qddot = forward_dynamics(&p, &s, &u).unwrap();
        assert!(qddot.norm() < 1e-10, "qddot {}", qddot.norm());
    }

    #[test]
    fn domain_guard_propagates_from_assemble() {
        let p = CraneParams::reference();
        let s = state([0.0, 1.7, 0.0, 2.0, 0.0, 0.0], [0.0; 6]);
        assert!(matches!(
            assemble_terms(&p, &s),
            Err(CraneError::DomainViolation {
                coordinate: "beta",
                ..
            })
        ));
    }

    #[test]
    fn singular_mass_matrix_reports_condition() {
        // force the degenerate boundary: theta2 ~ pi/2 squeezes m55 to zero
        let p = CraneParams::reference();
        let th2 = std::f64::consts::FRAC_PI_2 - 1e-9;
        let s = state([0.0, 0.0, 0.0, 2.0, 0.0, th2], [0.0; 6]);
        let terms = assemble_terms_unchecked(&p, &s);
        let r = solve_mass(&terms.m, &Vector6::zeros());
        assert!(matches!(r, Err(CraneError::SingularMassMatrix { .. })));
    }
}
