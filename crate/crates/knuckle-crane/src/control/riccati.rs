//! Continuous-time algebraic Riccati solver.
//!
//! `solve_care` finds the stabilizing solution of
//! `A'P + PA - P B R^-1 B' P + Q = 0` by the matrix sign function of the
//! Hamiltonian (determinant-scaled Newton inverse iteration), then polishes
//! it with Newton-Kleinman steps, each solving a Lyapunov equation through
//! its Kronecker-vectorized linear system. Sizes here are small (the crane
//! model is 12 states, 4 inputs) so dense O(n^6) Lyapunov solves are cheap.

use nalgebra::DMatrix;

use crate::error::{CraneError, Result};

/// Residual target for the iteration, relative to the Frobenius norm of Q.
pub const CARE_RESIDUAL_TARGET: f64 = 1e-9;

/// Combined iteration budget (sign steps plus Newton steps).
pub const CARE_MAX_ITER: usize = 200;

/// Solve the continuous-time algebraic Riccati equation.
///
/// Returns `(P, K)` with `P` symmetric positive semidefinite and
/// `K = R^-1 B' P` the stabilizing state feedback. Errors if the residual
/// target cannot be met or the closed loop `A - B K` is not strictly
/// stable.
pub fn solve_care(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    q: &DMatrix<f64>,
    r: &DMatrix<f64>,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "A must be square");
    assert_eq!(b.nrows(), n, "B row count must match A");
    let m = b.ncols();
    assert_eq!((q.nrows(), q.ncols()), (n, n), "Q must be n x n");
    assert_eq!((r.nrows(), r.ncols()), (m, m), "R must be m x m");

    let r_inv = r
        .clone()
        .try_inverse()
        .ok_or(CraneError::Config("R is singular".into()))?;
    let gain_from = |p: &DMatrix<f64>| &r_inv * b.transpose() * p;
    let g = b * &r_inv * b.transpose();

    let q_norm = q.norm().max(1.0);
    let residual_of =
        |p: &DMatrix<f64>| -> f64 { (a.transpose() * p + p * a - p * &g * p + q).norm() };

    // Hamiltonian sign iteration: Z <- (Z/c + c Z^-1)/2 with determinant
    // scaling; converges quadratically to sign(H) when H has no imaginary
    // eigenvalues.
    let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
    h.view_mut((0, 0), (n, n)).copy_from(a);
    h.view_mut((0, n), (n, n)).copy_from(&(-&g));
    h.view_mut((n, 0), (n, n)).copy_from(&(-q));
    h.view_mut((n, n), (n, n)).copy_from(&(-a.transpose()));

    let mut z = h;
    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < 100 {
        iterations += 1;
        let z_inv = match z.clone().try_inverse() {
            Some(zi) => zi,
            None => {
                return Err(CraneError::RiccatiNoConvergence {
                    residual: f64::INFINITY,
                    iterations,
                })
            }
        };
        let det = z.determinant().abs();
        // determinant scaling accelerates the early phase; guard the
        // degenerate cases
        let c = if det.is_finite() && det > 0.0 {
            det.powf(1.0 / (2.0 * n as f64))
        } else {
            1.0
        };
        let z_next = (&z / c + c * z_inv) * 0.5;
        let delta = (&z_next - &z).norm();
        let scale = z.norm();
        z = z_next;
        if delta <= 1e-13 * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(CraneError::RiccatiNoConvergence {
            residual: f64::NAN,
            iterations,
        });
    }

    // (sign(H) + I) [I; P] = 0: solve the stacked least-squares system
    // [W12; W22] P = -[W11; W21]
    let w = &z + DMatrix::<f64>::identity(2 * n, 2 * n);
    let mut lhs = DMatrix::<f64>::zeros(2 * n, n);
    lhs.view_mut((0, 0), (n, n))
        .copy_from(&w.view((0, n), (n, n)));
    lhs.view_mut((n, 0), (n, n))
        .copy_from(&w.view((n, n), (n, n)));
    let mut rhs = DMatrix::<f64>::zeros(2 * n, n);
    rhs.view_mut((0, 0), (n, n))
        .copy_from(&(-w.view((0, 0), (n, n))));
    rhs.view_mut((n, 0), (n, n))
        .copy_from(&(-w.view((n, 0), (n, n))));

    let normal = lhs.transpose() * &lhs;
    let p0 = normal
        .cholesky()
        .map(|ch| ch.solve(&(lhs.transpose() * &rhs)))
        .ok_or(CraneError::RiccatiNoConvergence {
            residual: f64::NAN,
            iterations,
        })?;
    let mut p = symmetrize(&p0);

    // Newton-Kleinman polish: with K_k stabilizing, the Lyapunov solution of
    // (A - B K_k)' P + P (A - B K_k) = -(Q + K_k' R K_k) is the next iterate
    while residual_of(&p) > CARE_RESIDUAL_TARGET * q_norm && iterations < CARE_MAX_ITER {
        iterations += 1;
        let k = gain_from(&p);
        let a_cl = a - b * &k;
        let rhs = -(q + k.transpose() * r * &k);
        let p_next = solve_lyapunov(&a_cl, &rhs)?;
        let p_next = symmetrize(&p_next);
        if (&p_next - &p).norm() <= f64::EPSILON * p.norm() {
            p = p_next;
            break;
        }
        p = p_next;
    }

    let residual = residual_of(&p);
    if residual > 1e-6 * q_norm {
        return Err(CraneError::RiccatiNoConvergence {
            residual,
            iterations,
        });
    }

    let k = gain_from(&p);
    let max_re = spectral_abscissa(&(a - b * &k));
    if max_re >= 0.0 {
        return Err(CraneError::RiccatiUnstable { max_re });
    }

    Ok((p, k))
}

/// Solve `A' X + X A = RHS` for X via the Kronecker-vectorized dense
/// system `(I (x) A' + A' (x) I) vec X = vec RHS`.
fn solve_lyapunov(a: &DMatrix<f64>, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let at = a.transpose();
    let eye = DMatrix::<f64>::identity(n, n);
    let big = eye.kronecker(&at) + at.kronecker(&eye);
    let vec_rhs = DMatrix::from_column_slice(n * n, 1, rhs.as_slice());
    let sol = big
        .lu()
        .solve(&vec_rhs)
        .ok_or(CraneError::RiccatiNoConvergence {
            residual: f64::NAN,
            iterations: 0,
        })?;
    Ok(DMatrix::from_column_slice(n, n, sol.as_slice()))
}

fn symmetrize(p: &DMatrix<f64>) -> DMatrix<f64> {
    (p + p.transpose()) * 0.5
}

/// Largest real part over the eigenvalues.
pub fn spectral_abscissa(a: &DMatrix<f64>) -> f64 {
    a.clone()
        .complex_eigenvalues()
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn double_integrator_closed_form() {
        // A = [[0,1],[0,0]], B = [0;1], Q = I, R = 1:
        // P = [[sqrt(3), 1], [1, sqrt(3)]], K = [1, sqrt(3)]
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let b = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let q = DMatrix::identity(2, 2);
        let r = DMatrix::identity(1, 1);
        let (p, k) = solve_care(&a, &b, &q, &r).unwrap();
        let s3 = 3.0_f64.sqrt();
        assert_relative_eq!(p[(0, 0)], s3, max_relative = 1e-10);
        assert_relative_eq!(p[(0, 1)], 1.0, max_relative = 1e-10);
        assert_relative_eq!(p[(1, 1)], s3, max_relative = 1e-10);
        assert_relative_eq!(k[(0, 0)], 1.0, max_relative = 1e-10);
        assert_relative_eq!(k[(0, 1)], s3, max_relative = 1e-10);
    }

    #[test]
    fn diagonal_case_closed_form() {
        // A = -I, B = I, Q = I, R = I decouples into scalar equations
        // -2p - p^2 + 1 = 0, so P = (sqrt(2) - 1) I
        let n = 3;
        let a = -DMatrix::<f64>::identity(n, n);
        let b = DMatrix::<f64>::identity(n, n);
        let q = DMatrix::<f64>::identity(n, n);
        let r = DMatrix::<f64>::identity(n, n);
        let (p, _) = solve_care(&a, &b, &q, &r).unwrap();
        let expect = 2.0_f64.sqrt() - 1.0;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { expect } else { 0.0 };
                assert_relative_eq!(p[(i, j)], want, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn solution_is_symmetric_psd_and_stabilizing() {
        // a randomish stable-izable system
        let a = DMatrix::from_row_slice(3, 3, &[0.2, 1.0, 0.0, -0.5, 0.1, 0.7, 0.0, -0.3, -0.2]);
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.5, 0.3, 1.0]);
        let q = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[2.0, 1.0, 0.5]));
        let r = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[1.0, 4.0]));
        let (p, k) = solve_care(&a, &b, &q, &r).unwrap();

        assert!((&p - p.transpose()).norm() <= 1e-10 * p.norm());
        let eig = p.clone().symmetric_eigen().eigenvalues;
        assert!(eig.iter().all(|&l| l >= -1e-10 * p.norm()), "P not PSD");

        let resid = (a.transpose() * &p + &p * &a
            - &p * &b * r.clone().try_inverse().unwrap() * b.transpose() * &p
            + &q)
            .norm();
        assert!(resid <= 1e-9 * q.norm(), "residual {resid}");

        assert!(spectral_abscissa(&(&a - &b * &k)) < 0.0);
    }

    #[test]
    fn lyapunov_kronecker_solve() {
        let a = DMatrix::from_row_slice(2, 2, &[-1.0, 0.3, 0.0, -2.0]);
        let rhs = DMatrix::from_row_slice(2, 2, &[-1.0, 0.2, 0.2, -0.5]);
        let x = solve_lyapunov(&a, &rhs).unwrap();
        let back = a.transpose() * &x + &x * &a;
        assert!((back - rhs).norm() < 1e-12);
    }
}
