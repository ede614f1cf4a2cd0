//! Two energy audits of the model and integrator.
//!
//! Open loop: with zero input the system is conservative, so T + U along
//! an RK4 trajectory measures the integrator's energy drift. Closed loop:
//! along the controlled system the storage-function rate must equal the
//! actuated damping power, measured here by central differences of the
//! logged V.
//!
//!     cargo run --release --example energy_audit

use knuckle_crane::dynamics::assemble_terms_unchecked;
use knuckle_crane::energy::{kinetic_energy, lyapunov_vdot_analytic, potential_energy};
use knuckle_crane::sim::{run_scenario, scenarios::scenario};
use knuckle_crane::{ControlInput, CraneParams, GeneralizedState};
use nalgebra::Vector6;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = CraneParams::reference();

    // --- open-loop drift over 10 s at dt = 1e-4, winch free, links swinging
    let dt = 1e-4;
    let mut s = GeneralizedState::new(
        Vector6::new(0.0, -1.3, -1.2, 2.0, 0.1, 0.05),
        Vector6::new(0.1, 0.0, 0.0, 0.0, 0.0, 0.0),
    );
    let e0 = kinetic_energy(&p, &s) + potential_energy(&p, &s);
    let mut max_dev = 0.0_f64;
    for _ in 0..100_000 {
        let f = |st: &GeneralizedState| {
            let t = assemble_terms_unchecked(&p, st);
            let rhs = ControlInput::zero().zeta() - t.c * st.qdot - t.gvec;
            (st.qdot, t.m.cholesky().unwrap().solve(&rhs))
        };
        let (k1q, k1v) = f(&s);
        let s2 = GeneralizedState::new(s.q + k1q * (dt / 2.0), s.qdot + k1v * (dt / 2.0));
        let (k2q, k2v) = f(&s2);
        let s3 = GeneralizedState::new(s.q + k2q * (dt / 2.0), s.qdot + k2v * (dt / 2.0));
        let (k3q, k3v) = f(&s3);
        let s4 = GeneralizedState::new(s.q + k3q * dt, s.qdot + k3v * dt);
        let (k4q, k4v) = f(&s4);
        s = GeneralizedState::new(
            s.q + (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * (dt / 6.0),
            s.qdot + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (dt / 6.0),
        );
        let e = kinetic_energy(&p, &s) + potential_energy(&p, &s);
        max_dev = max_dev.max((e - e0).abs());
    }
    println!(
        "open loop, u = 0, 10 s at dt = 1e-4: E(0) = {e0:.2} J, max |E - E(0)| = {max_dev:.3e} J \
         (relative {:.1e})",
        max_dev / e0.abs()
    );

    // --- closed-loop storage rate vs damping power
    let mut cfg = scenario(1)?;
    cfg.t_final = 5.0;
    let log = run_scenario(&cfg)?;
    let mut worst = 0.0_f64;
    let mut peak = 0.0_f64;
    for i in 1..log.rows.len() - 1 {
        let fd = (log.rows[i + 1].lyapunov - log.rows[i - 1].lyapunov) / (2.0 * cfg.dt);
        let st = GeneralizedState::new(
            Vector6::from_row_slice(&log.rows[i].q),
            Vector6::from_row_slice(&log.rows[i].qdot),
        );
        let analytic = lyapunov_vdot_analytic(&st, &cfg.gains);
        worst = worst.max((fd - analytic).abs());
        peak = peak.max(analytic.abs());
    }
    println!(
        "closed loop, first 5 s: max |dV/dt - (-sum kd xdot^2)| = {worst:.3e} W against peak \
         {peak:.1} W (relative {:.1e})",
        worst / peak
    );
    Ok(())
}
