//! Scalar form of the six equations of motion, kept as an arithmetic path
//! fully separate from the closed-form matrix assembly.
//!
//! Each equation is evaluated term by term in its expanded form; the
//! residual of row `i` is `lhs_i - zeta_i`, which vanishes exactly when
//! `(qddot, qdot, q, u)` satisfy the dynamics. The structural property
//! suite cross-checks these residuals against `M qddot + C qdot + g - zeta`
//! at random states; the two paths must agree to tight tolerance.

use nalgebra::Vector6;

use crate::error::Result;
use crate::params::CraneParams;
use crate::state::{ControlInput, GeneralizedState};

/// Residuals of the six scalar equations of motion.
///
/// Returns `lhs - zeta` row by row; a consistent `(s, qddot, u)` triple
/// gives a zero vector. The state must be admissible.
#[rustfmt::skip]
pub fn scalar_eom_residual(
    p: &CraneParams,
    s: &GeneralizedState,
    qddot: &Vector6<f64>,
    u: &ControlInput,
) -> Result<Vector6<f64>> {
    s.check_admissible()?;

    let (sb, cb) = s.beta().sin_cos();
    let (sg, cg) = s.gamma().sin_cos();
    let (s1, c1) = s.theta1().sin_cos();
    let (s2, c2) = s.theta2().sin_cos();
    let d = s.d();
    let (da, db, dg, dd, dt1, dt2) = (
        s.qdot[0], s.qdot[1], s.qdot[2], s.qdot[3], s.qdot[4], s.qdot[5],
    );
    let (dda, ddb, ddg, ddd, ddt1, ddt2) =
        (qddot[0], qddot[1], qddot[2], qddot[3], qddot[4], qddot[5]);

    let (m, mb, mj, lb, lj, g) = (p.m, p.m_b, p.m_j, p.l_b, p.l_j, p.g);
    let (it, ib, ij) = (p.i_tot, p.i_b, p.i_j);
    let (a1, a2, a3) = (p.a1(), p.a2(), p.a3());
    let b4 = lb * m;
    let b5 = lj * m;

    // slew equation
    let lhs1 = it*dda + a1*dda*cb*cb + a2*dda*cg*cg + d*d*dda*m
        + 2.0*d*d*da*dt1*m*c1*c2*c2*s1 + 2.0*d*d*da*dt2*m*c1*c1*c2*s2
        - a1*da*db*(2.0*sb*cb) - a2*da*dg*(2.0*sg*cg) + a3*dda*cb*cg - d*d*ddt2*m*s1
        + 2.0*dd*d*da*m + 2.0*b4*d*dda*cb*s2 + 2.0*b5*d*dda*cg*s2
        + 2.0*b4*dd*da*cb*s2 + 2.0*b5*dd*da*cg*s2
        - a3*da*db*cg*sb - a3*da*dg*cb*sg - 2.0*d*d*dt1*dt2*m*c1
        - d*d*dda*m*c1*c1*c2*c2 + b4*ddd*cb*c2*s1 + b5*ddd*cg*c2*s1
        - 2.0*dd*d*dt2*m*s1
        + b4*d*ddb*c2*sb*s1 - b4*d*ddt2*cb*s1*s2
        + b5*d*ddg*c2*sg*s1 - b5*d*ddt2*cg*s1*s2
        - 2.0*b4*dd*dt2*cb*s1*s2 - 2.0*b5*dd*dt2*cg*s1*s2
        + b4*d*db*db*cb*c2*s1 - b4*d*dt1*dt1*cb*c2*s1
        - b4*d*dt2*dt2*cb*c2*s1 + b5*d*dg*dg*cg*c2*s1
        - b5*d*dt1*dt1*cg*c2*s1 - b5*d*dt2*dt2*cg*c2*s1
        - 2.0*dd*d*da*m*c1*c1*c2*c2 + 2.0*d*d*dt1*dt2*m*c1*c2*c2
        + 2.0*b4*d*da*dt2*cb*c2 + 2.0*b5*d*da*dt2*cg*c2
        + d*d*ddt1*m*c1*c2*s2 - 2.0*b4*d*da*db*sb*s2 - 2.0*b5*d*da*dg*sg*s2
        + b4*d*ddt1*cb*c1*c2 + b5*d*ddt1*cg*c1*c2
        + 2.0*b4*dd*dt1*cb*c1*c2 + 2.0*b5*dd*dt1*cg*c1*c2
        - d*d*dt1*dt1*m*c2*s1*s2
        - 2.0*b4*d*dt1*dt2*cb*c1*s2 - 2.0*b5*d*dt1*dt2*cg*c1*s2
        + 2.0*dd*d*dt1*m*c1*c2*s2;

    // boom luff equation
    let lhs2 = a1*ddb + ib*ddb + a1*da*da*(2.0*sb*cb)/2.0 + a3*da*da*cg*sb/2.0
        - a3*dg*dg*cb*sg/2.0 + a3*dg*dg*cg*sb/2.0
        + g*lb*m*cb + g*lb*mb*cb/2.0 + g*lb*mj*cb
        + a3*ddg*cb*cg/2.0 - b4*ddd*sb*s2 + a3*ddg*sb*sg/2.0
        - b4*d*ddt2*c2*sb - 2.0*b4*dd*dt2*c2*sb - b4*ddd*cb*c1*c2
        + b4*d*da*da*sb*s2 + b4*d*dt2*dt2*sb*s2
        + b4*d*ddt1*cb*c2*s1 + b4*d*ddt2*cb*c1*s2
        + 2.0*b4*dd*dt1*cb*c2*s1 + 2.0*b4*dd*dt2*cb*c1*s2
        + b4*d*dda*c2*sb*s1 + 2.0*b4*dd*da*c2*sb*s1
        + b4*d*dt1*dt1*cb*c1*c2 + b4*d*dt2*dt2*cb*c1*c2
        + 2.0*b4*d*da*dt1*c1*c2*sb - 2.0*b4*d*dt1*dt2*cb*s1*s2
        - 2.0*b4*d*da*dt2*sb*s1*s2;

    // jib luff equation
    let lhs3 = a2*ddg + ij*ddg + a2*da*da*(2.0*sg*cg)/2.0 + a3*da*da*cb*sg/2.0
        + a3*db*db*cb*sg/2.0 - a3*db*db*cg*sb/2.0
        + g*lj*m*cg + g*lj*mj*cg/2.0 + a3*ddb*cb*cg/2.0
        - b5*ddd*sg*s2 + a3*ddb*sb*sg/2.0 - b5*d*ddt2*c2*sg
        - 2.0*b5*dd*dt2*c2*sg - b5*ddd*cg*c1*c2
        + b5*d*da*da*sg*s2 + b5*d*dt2*dt2*sg*s2
        + b5*d*ddt1*cg*c2*s1 + b5*d*ddt2*cg*c1*s2
        + 2.0*b5*dd*dt1*cg*c2*s1 + 2.0*b5*dd*dt2*cg*c1*s2
        + b5*d*dda*c2*sg*s1 + 2.0*b5*dd*da*c2*sg*s1
        + b5*d*dt1*dt1*cg*c1*c2 + b5*d*dt2*dt2*cg*c1*c2
        + 2.0*b5*d*da*dt1*c1*c2*sg - 2.0*b5*d*dt1*dt2*cg*s1*s2
        - 2.0*b5*d*da*dt2*sg*s1*s2;

    // hoist equation
    let lhs4 = ddd*m - d*da*da*m - d*dt2*dt2*m - b4*da*da*cb*s2 - b4*db*db*cb*s2
        - b5*da*da*cg*s2 - b5*dg*dg*cg*s2 - d*dt1*dt1*m*c2*c2
        - b4*ddb*sb*s2 - b5*ddg*sg*s2
        - g*m*c1*c2 + d*da*da*m*c1*c1*c2*c2
        - b4*ddb*cb*c1*c2 - b5*ddg*cg*c1*c2
        + b4*dda*cb*c2*s1 + b5*dda*cg*c2*s1 + 2.0*d*da*dt2*m*s1
        + b4*db*db*c1*c2*sb + b5*dg*dg*c1*c2*sg
        - 2.0*b4*da*db*c2*sb*s1 - 2.0*b5*da*dg*c2*sg*s1
        - 2.0*d*da*dt1*m*c1*c2*s2;

    // tangential swing equation (unactuated)
    let lhs5 = d*c2*(g*m*s1 - b4*db*db*sb*s1 - b5*dg*dg*sg*s1
        + d*ddt1*m*c2 + 2.0*dd*dt1*m*c2
        + b4*dda*cb*c1 + b5*dda*cg*c1
        + b4*ddb*cb*s1 + b5*ddg*cg*s1
        - 2.0*b4*da*db*c1*sb - 2.0*b5*da*dg*c1*sg
        + d*dda*m*c1*s2 + 2.0*dd*da*m*c1*s2 - 2.0*d*dt1*dt2*m*s2
        - d*da*da*m*c1*c2*s1 + 2.0*d*da*dt2*m*c1*c2);

    // radial swing equation (unactuated)
    let lhs6 = -d*(b4*da*da*cb*c2 - 2.0*dd*dt2*m - d*ddt2*m + b4*db*db*cb*c2
        + b5*da*da*cg*c2 + b5*dg*dg*cg*c2 - d*dt1*dt1*m*(2.0*s2*c2)/2.0
        + d*dda*m*s1 + 2.0*dd*da*m*s1 + b4*ddb*c2*sb
        + b5*ddg*c2*sg - g*m*c1*s2
        + b4*db*db*c1*sb*s2 + b5*dg*dg*c1*sg*s2
        - b4*ddb*cb*c1*s2 - b5*ddg*cg*c1*s2
        + b4*dda*cb*s1*s2 + b5*dda*cg*s1*s2
        + 2.0*d*da*dt1*m*c1*c2*c2 - 2.0*b4*da*db*sb*s1*s2
        - 2.0*b5*da*dg*sg*s1*s2 + d*da*da*m*c1*c1*c2*s2);

    let zeta = u.zeta();
    Ok(Vector6::new(
        lhs1 - zeta[0],
        lhs2 - zeta[1],
        lhs3 - zeta[2],
        lhs4 - zeta[3],
        lhs5,
        lhs6,
    ))
}
