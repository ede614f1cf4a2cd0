//! Closed-form entries of the inertia matrix M(q), the Coriolis matrix
//! C(q, qdot), the gravity vector g(q), and the rate matrix Mdot(q, qdot).
//!
//! M is the Hessian of the kinetic energy in the velocities, g is the
//! gradient of the potential energy, and C uses the Christoffel-symbol
//! form
//!
//! ```text
//! c_kj = 1/2 * sum_i ( dM_kj/dq_i + dM_ki/dq_j - dM_ij/dq_k ) * qdot_i
//! ```
//!
//! which is the unique splitting that makes `1/2 Mdot - C` skew symmetric.
//! The bodies below are machine-generated from that definition and checked
//! term-by-term against an independent derivation; edit with care and rerun
//! the structural property suite after any change.
//!
//! Shorthands: `sb = sin(beta)`, `cb = cos(beta)`, `sg/cg` for gamma,
//! `s1/c1` for theta1, `s2/c2` for theta2; `da..dt2` are the six velocity
//! components; `b4 = l_b m`, `b5 = l_j m`.

use nalgebra::{Matrix6, Vector6};

use crate::params::CraneParams;

struct Trig {
    sb: f64,
    cb: f64,
    sg: f64,
    cg: f64,
    s1: f64,
    c1: f64,
    s2: f64,
    c2: f64,
}

#[inline]
fn trig(q: &Vector6<f64>) -> Trig {
    let (sb, cb) = q[1].sin_cos();
    let (sg, cg) = q[2].sin_cos();
    let (s1, c1) = q[4].sin_cos();
    let (s2, c2) = q[5].sin_cos();
    Trig {
        sb,
        cb,
        sg,
        cg,
        s1,
        c1,
        s2,
        c2,
    }
}

/// Inertia matrix M(q), symmetric positive definite on the admissible
/// domain, with structural zeros m45 = m46 = m56 = 0.
pub fn mass_matrix(p: &CraneParams, q: &Vector6<f64>) -> Matrix6<f64> {
    let Trig {
        sb,
        cb,
        sg,
        cg,
        s1,
        c1,
        s2,
        c2,
    } = trig(q);
    let d = q[3];
    let m = p.m;
    let (it, ib, ij) = (p.i_tot, p.i_b, p.i_j);
    let (a1, a2, a3) = (p.a1(), p.a2(), p.a3());
    let b4 = p.l_b * p.m;
    let b5 = p.l_j * p.m;

    let m11 = 2.0 * b4 * cb * d * s2
        + 2.0 * b5 * cg * d * s2
        + a1 * cb * cb
        + a2 * cg * cg
        + a3 * cb * cg
        - c1 * c1 * c2 * c2 * d * d * m
        + d * d * m
        + it;
    let m12 = b4 * c2 * d * s1 * sb;
    let m13 = b5 * c2 * d * s1 * sg;
    let m14 = b4 * c2 * cb * s1 + b5 * c2 * cg * s1;
    let m15 = b4 * c1 * c2 * cb * d + b5 * c1 * c2 * cg * d + c1 * c2 * d * d * m * s2;
    let m16 = -(b4 * cb * d * s1 * s2) - b5 * cg * d * s1 * s2 - d * d * m * s1;
    let m22 = a1 + ib;
    let m23 = 0.5 * a3 * cb * cg + 0.5 * a3 * sb * sg;
    let m24 = -(b4 * c1 * c2 * cb) - b4 * s2 * sb;
    let m25 = b4 * c2 * cb * d * s1;
    let m26 = b4 * c1 * cb * d * s2 - b4 * c2 * d * sb;
    let m33 = a2 + ij;
    let m34 = -(b5 * c1 * c2 * cg) - b5 * s2 * sg;
    let m35 = b5 * c2 * cg * d * s1;
    let m36 = b5 * c1 * cg * d * s2 - b5 * c2 * d * sg;
    let m44 = m;
    let m55 = c2 * c2 * d * d * m;
    let m66 = d * d * m;

    Matrix6::new(
        m11, m12, m13, m14, m15, m16, //
        m12, m22, m23, m24, m25, m26, //
        m13, m23, m33, m34, m35, m36, //
        m14, m24, m34, m44, 0.0, 0.0, //
        m15, m25, m35, 0.0, m55, 0.0, //
        m16, m26, m36, 0.0, 0.0, m66,
    )
}

/// Coriolis/centripetal matrix C(q, qdot) in Christoffel form.
#[rustfmt::skip]
pub fn coriolis_matrix(p: &CraneParams, q: &Vector6<f64>, qdot: &Vector6<f64>) -> Matrix6<f64> {
    let Trig { sb, cb, sg, cg, s1, c1, s2, c2 } = trig(q);
    let d = q[3];
    let m = p.m;
    let (a1, a2, a3) = (p.a1(), p.a2(), p.a3());
    let b4 = p.l_b * p.m;
    let b5 = p.l_j * p.m;
    let (da, db, dg, dd, dt1, dt2) =
        (qdot[0], qdot[1], qdot[2], qdot[3], qdot[4], qdot[5]);

    let c11 = db*(-0.5*a3*cg*sb - a1*cb*sb - b4*d*s2*sb) + dg*(-0.5*a3*cb*sg - a2*cg*sg - b5*d*s2*sg) + dd*(b4*cb*s2 + b5*cg*s2 - c1*c1*c2*c2*d*m + d*m) + dt1*(c1*c2*c2*d*d*m*s1) + dt2*(b4*c2*cb*d + b5*c2*cg*d + c1*c1*c2*d*d*m*s2);
    let c12 = da*(-0.5*a3*cg*sb - a1*cb*sb - b4*d*s2*sb) + db*(b4*c2*cb*d*s1);
    let c13 = da*(-0.5*a3*cb*sg - a2*cg*sg - b5*d*s2*sg) + dg*(b5*c2*cg*d*s1);
    let c14 = da*(b4*cb*s2 + b5*cg*s2 - c1*c1*c2*c2*d*m + d*m) + dt1*(b4*c1*c2*cb + b5*c1*c2*cg + c1*c2*d*m*s2) + dt2*(-(b4*cb*s1*s2) - b5*cg*s1*s2 - d*m*s1);
    let c15 = da*(c1*c2*c2*d*d*m*s1) + dd*(b4*c1*c2*cb + b5*c1*c2*cg + c1*c2*d*m*s2) + dt1*(-(b4*c2*cb*d*s1) - b5*c2*cg*d*s1 - c2*d*d*m*s1*s2) + dt2*(0.5*c1*c2*c2*d*d*m - 0.5*c1*d*d*m - 0.5*c1*d*d*m*s2*s2 - b4*c1*cb*d*s2 - b5*c1*cg*d*s2);
    let c16 = da*(b4*c2*cb*d + b5*c2*cg*d + c1*c1*c2*d*d*m*s2) + dd*(-(b4*cb*s1*s2) - b5*cg*s1*s2 - d*m*s1) + dt1*(0.5*c1*c2*c2*d*d*m - 0.5*c1*d*d*m - 0.5*c1*d*d*m*s2*s2 - b4*c1*cb*d*s2 - b5*c1*cg*d*s2) + dt2*(-(b4*c2*cb*d*s1) - b5*c2*cg*d*s1);
    let c21 = da*(0.5*a3*cg*sb + a1*cb*sb + b4*d*s2*sb) + dd*(b4*c2*s1*sb) + dt1*(b4*c1*c2*d*sb) + dt2*(-(b4*d*s1*s2*sb));
    let c22 = 0.0;
    let c23 = dg*(-0.5*a3*cb*sg + 0.5*a3*cg*sb);
    let c24 = da*(b4*c2*s1*sb) + dt1*(b4*c2*cb*s1) + dt2*(b4*c1*cb*s2 - b4*c2*sb);
    let c25 = da*(b4*c1*c2*d*sb) + dd*(b4*c2*cb*s1) + dt1*(b4*c1*c2*cb*d) + dt2*(-(b4*cb*d*s1*s2));
    let c26 = da*(-(b4*d*s1*s2*sb)) + dd*(b4*c1*cb*s2 - b4*c2*sb) + dt1*(-(b4*cb*d*s1*s2)) + dt2*(b4*c1*c2*cb*d + b4*d*s2*sb);
    let c31 = da*(0.5*a3*cb*sg + a2*cg*sg + b5*d*s2*sg) + dd*(b5*c2*s1*sg) + dt1*(b5*c1*c2*d*sg) + dt2*(-(b5*d*s1*s2*sg));
    let c32 = db*(0.5*a3*cb*sg - 0.5*a3*cg*sb);
    let c33 = 0.0;
    let c34 = da*(b5*c2*s1*sg) + dt1*(b5*c2*cg*s1) + dt2*(b5*c1*cg*s2 - b5*c2*sg);
    let c35 = da*(b5*c1*c2*d*sg) + dd*(b5*c2*cg*s1) + dt1*(b5*c1*c2*cg*d) + dt2*(-(b5*cg*d*s1*s2));
    let c36 = da*(-(b5*d*s1*s2*sg)) + dd*(b5*c1*cg*s2 - b5*c2*sg) + dt1*(-(b5*cg*d*s1*s2)) + dt2*(b5*c1*c2*cg*d + b5*d*s2*sg);
    let c41 = da*(-(b4*cb*s2) - b5*cg*s2 + c1*c1*c2*c2*d*m - d*m) + db*(-(b4*c2*s1*sb)) + dg*(-(b5*c2*s1*sg)) + dt1*(-(c1*c2*d*m*s2)) + dt2*(d*m*s1);
    let c42 = da*(-(b4*c2*s1*sb)) + db*(b4*c1*c2*sb - b4*cb*s2);
    let c43 = da*(-(b5*c2*s1*sg)) + dg*(b5*c1*c2*sg - b5*cg*s2);
    let c44 = 0.0;
    let c45 = da*(-(c1*c2*d*m*s2)) + dt1*(-(c2*c2*d*m));
    let c46 = da*(d*m*s1) + dt2*(-(d*m));
    let c51 = da*(-(c1*c2*c2*d*d*m*s1)) + db*(-(b4*c1*c2*d*sb)) + dg*(-(b5*c1*c2*d*sg)) + dd*(c1*c2*d*m*s2) + dt2*(0.5*c1*c2*c2*d*d*m + 0.5*c1*d*d*m - 0.5*c1*d*d*m*s2*s2);
    let c52 = da*(-(b4*c1*c2*d*sb)) + db*(-(b4*c2*d*s1*sb));
    let c53 = da*(-(b5*c1*c2*d*sg)) + dg*(-(b5*c2*d*s1*sg));
    let c54 = da*(c1*c2*d*m*s2) + dt1*(c2*c2*d*m);
    let c55 = dd*(c2*c2*d*m) + dt2*(-(c2*d*d*m*s2));
    let c56 = da*(0.5*c1*c2*c2*d*d*m + 0.5*c1*d*d*m - 0.5*c1*d*d*m*s2*s2) + dt1*(-(c2*d*d*m*s2));
    let c61 = da*(-(b4*c2*cb*d) - b5*c2*cg*d - c1*c1*c2*d*d*m*s2) + db*(b4*d*s1*s2*sb) + dg*(b5*d*s1*s2*sg) + dd*(-(d*m*s1)) + dt1*(-0.5*c1*c2*c2*d*d*m - 0.5*c1*d*d*m + 0.5*c1*d*d*m*s2*s2);
    let c62 = da*(b4*d*s1*s2*sb) + db*(-(b4*c1*d*s2*sb) - b4*c2*cb*d);
    let c63 = da*(b5*d*s1*s2*sg) + dg*(-(b5*c1*d*s2*sg) - b5*c2*cg*d);
    let c64 = da*(-(d*m*s1)) + dt2*(d*m);
    let c65 = da*(-0.5*c1*c2*c2*d*d*m - 0.5*c1*d*d*m + 0.5*c1*d*d*m*s2*s2) + dt1*(c2*d*d*m*s2);
    let c66 = dd*(d*m);

    Matrix6::new(
        c11, c12, c13, c14, c15, c16,
        c21, c22, c23, c24, c25, c26,
        c31, c32, c33, c34, c35, c36,
        c41, c42, c43, c44, c45, c46,
        c51, c52, c53, c54, c55, c56,
        c61, c62, c63, c64, c65, c66,
    )
}

/// Gravity vector g(q), the gradient of the potential energy. The slew
/// component is identically zero.
pub fn gravity_vector(p: &CraneParams, q: &Vector6<f64>) -> Vector6<f64> {
    let Trig {
        cb,
        cg,
        s1,
        c1,
        s2,
        c2,
        ..
    } = trig(q);
    let d = q[3];
    let (m, mb, mj, lb, lj, g) = (p.m, p.m_b, p.m_j, p.l_b, p.l_j, p.g);

    let g2 = 0.5 * cb * g * lb * mb + cb * g * lb * m + cb * g * lb * mj;
    let g3 = 0.5 * cg * g * lj * mj + cg * g * lj * m;
    let g4 = -(c1 * c2 * g * m);
    let g5 = c2 * d * g * m * s1;
    let g6 = c1 * d * g * m * s2;

    Vector6::new(0.0, g2, g3, g4, g5, g6)
}

/// Analytic rate of the inertia matrix along the flow,
/// `Mdot = sum_k dM/dq_k * qdot_k`. Symmetric. Used by the structural
/// property suite to test the skew symmetry of `1/2 Mdot - C` against an
/// arithmetic path separate from the Christoffel assembly.
#[rustfmt::skip]
pub fn mass_matrix_rate(p: &CraneParams, q: &Vector6<f64>, qdot: &Vector6<f64>) -> Matrix6<f64> {
    let Trig { sb, cb, sg, cg, s1, c1, s2, c2 } = trig(q);
    let d = q[3];
    let m = p.m;
    let (a1, a2, a3) = (p.a1(), p.a2(), p.a3());
    let b4 = p.l_b * p.m;
    let b5 = p.l_j * p.m;
    let (db, dg, dd, dt1, dt2) = (qdot[1], qdot[2], qdot[3], qdot[4], qdot[5]);

    let md11 = db*(-2.0*a1*cb*sb - 2.0*b4*d*s2*sb - a3*cg*sb) + dg*(-2.0*a2*cg*sg - 2.0*b5*d*s2*sg - a3*cb*sg) + dd*(2.0*b4*cb*s2 + 2.0*b5*cg*s2 - 2.0*c1*c1*c2*c2*d*m + 2.0*d*m) + dt1*(2.0*c1*c2*c2*d*d*m*s1) + dt2*(2.0*b4*c2*cb*d + 2.0*b5*c2*cg*d + 2.0*c1*c1*c2*d*d*m*s2);
    let md12 = db*(b4*c2*cb*d*s1) + dd*(b4*c2*s1*sb) + dt1*(b4*c1*c2*d*sb) + dt2*(-(b4*d*s1*s2*sb));
    let md13 = dg*(b5*c2*cg*d*s1) + dd*(b5*c2*s1*sg) + dt1*(b5*c1*c2*d*sg) + dt2*(-(b5*d*s1*s2*sg));
    let md14 = db*(-(b4*c2*s1*sb)) + dg*(-(b5*c2*s1*sg)) + dt1*(b4*c1*c2*cb + b5*c1*c2*cg) + dt2*(-(b4*cb*s1*s2) - b5*cg*s1*s2);
    let md15 = db*(-(b4*c1*c2*d*sb)) + dg*(-(b5*c1*c2*d*sg)) + dd*(2.0*c1*c2*d*m*s2 + b4*c1*c2*cb + b5*c1*c2*cg) + dt1*(-(b4*c2*cb*d*s1) - b5*c2*cg*d*s1 - c2*d*d*m*s1*s2) + dt2*(-(b4*c1*cb*d*s2) - b5*c1*cg*d*s2 + c1*c2*c2*d*d*m - c1*d*d*m*s2*s2);
    let md16 = db*(b4*d*s1*s2*sb) + dg*(b5*d*s1*s2*sg) + dd*(-2.0*d*m*s1 - b4*cb*s1*s2 - b5*cg*s1*s2) + dt1*(-(b4*c1*cb*d*s2) - b5*c1*cg*d*s2 - c1*d*d*m) + dt2*(-(b4*c2*cb*d*s1) - b5*c2*cg*d*s1);
    let md22 = 0.0;
    let md23 = db*(0.5*a3*cb*sg - 0.5*a3*cg*sb) + dg*(-0.5*a3*cb*sg + 0.5*a3*cg*sb);
    let md24 = db*(b4*c1*c2*sb - b4*cb*s2) + dt1*(b4*c2*cb*s1) + dt2*(b4*c1*cb*s2 - b4*c2*sb);
    let md25 = db*(-(b4*c2*d*s1*sb)) + dd*(b4*c2*cb*s1) + dt1*(b4*c1*c2*cb*d) + dt2*(-(b4*cb*d*s1*s2));
    let md26 = db*(-(b4*c1*d*s2*sb) - b4*c2*cb*d) + dd*(b4*c1*cb*s2 - b4*c2*sb) + dt1*(-(b4*cb*d*s1*s2)) + dt2*(b4*c1*c2*cb*d + b4*d*s2*sb);
    let md33 = 0.0;
    let md34 = dg*(b5*c1*c2*sg - b5*cg*s2) + dt1*(b5*c2*cg*s1) + dt2*(b5*c1*cg*s2 - b5*c2*sg);
    let md35 = dg*(-(b5*c2*d*s1*sg)) + dd*(b5*c2*cg*s1) + dt1*(b5*c1*c2*cg*d) + dt2*(-(b5*cg*d*s1*s2));
    let md36 = dg*(-(b5*c1*d*s2*sg) - b5*c2*cg*d) + dd*(b5*c1*cg*s2 - b5*c2*sg) + dt1*(-(b5*cg*d*s1*s2)) + dt2*(b5*c1*c2*cg*d + b5*d*s2*sg);
    let md44 = 0.0;
    let md55 = dd*(2.0*c2*c2*d*m) + dt2*(-2.0*c2*d*d*m*s2);
    let md66 = dd*(2.0*d*m);

    Matrix6::new(
        md11, md12, md13, md14, md15, md16,
        md12, md22, md23, md24, md25, md26,
        md13, md23, md33, md34, md35, md36,
        md14, md24, md34, md44, 0.0, 0.0,
        md15, md25, md35, 0.0, md55, 0.0,
        md16, md26, md36, 0.0, 0.0, md66,
    )
}
