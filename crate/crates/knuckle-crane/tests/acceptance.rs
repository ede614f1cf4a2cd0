//! Acceptance suite: one test per acceptance criterion, each printing a
//! pass/fail line per sub-check (run with `--nocapture` to see them all).
//!
//! Every tolerance is pinned here in code. Two groups of sub-checks are
//! expected to fail with the bundled gain set and LQR weights; the physics
//! behind both is documented in README "Known behavior of the bundled
//! tuning" and asserted exactly as specified rather than loosened:
//!
//! - the slew axis carries ~3800 kg m^2 against a rate gain of 100, so its
//!   error envelope decays at kd/(2 m11) ~ 0.013/s and 2%-settling lands
//!   near 300 s, outside the required [50, 200] s (this also keeps the
//!   tangential swing above the residual bounds within the run window);
//! - the LQR weights produce a closed loop with spectral abscissa around
//!   -6e-4 and strong hoist/luff cross gains; the linear design is stable
//!   but the feedback drives the nonlinear plant out of the admissible
//!   domain from the bundled initial pose.

use nalgebra::{DMatrix, Vector6};

use knuckle_crane::control::{
    linearize, lqr::LqrController, riccati::spectral_abscissa, ControllerKind, LqrWeights,
    LINEARIZE_FD_STEP,
};
use knuckle_crane::dynamics::assemble_terms_unchecked;
use knuckle_crane::energy::{kinetic_energy, lyapunov_vdot_analytic, potential_energy};
use knuckle_crane::error::CraneError;
use knuckle_crane::io::csv_bytes;
use knuckle_crane::sim::{metrics, run_scenario, scenarios::scenario};
use knuckle_crane::verify::run_property_suite;
use knuckle_crane::{ControlInput, CraneParams, GeneralizedState};

fn check(name: &str, pass: bool, detail: String) -> bool {
    println!(
        "  [{}] {name}: {detail}",
        if pass { "pass" } else { "FAIL" }
    );
    pass
}

fn finish(number: u8, title: &str, ok: bool) {
    println!(
        "ACCEPTANCE {number} ({title}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion {number} ({title}) failed");
}

#[test]
fn acceptance_1_structural_property_suite() {
    let t0 = std::time::Instant::now();
    let report = run_property_suite(&CraneParams::reference(), 1000, 2024).unwrap();
    let elapsed = t0.elapsed().as_secs_f64();

    let mut ok = true;
    for c in &report.checks {
        ok &= check(
            c.name,
            c.pass,
            format!("deviation {:.3e} (limit {:.1e})", c.value, c.limit),
        );
    }
    ok &= check(
        "desk scale",
        elapsed < 10.0,
        format!("{elapsed:.2} s for 1000 samples (limit 10 s)"),
    );
    finish(1, "structural property suite", ok);
}

#[test]
fn acceptance_2_energy_oracles() {
    let mut ok = true;

    // open-loop conservative motion: u = 0, rig falling from a near-hang
    // pose, the winch free; the swing stays far from the |theta2| = pi/2
    // boundary while the links traverse the full luff range, so the
    // unguarded closed forms apply throughout
    {
        let p = CraneParams::reference();
        let mut s = GeneralizedState::new(
            Vector6::new(0.0, -1.3, -1.2, 2.0, 0.1, 0.05),
            Vector6::new(0.1, 0.0, 0.0, 0.0, 0.0, 0.0),
        );
        let e0 = kinetic_energy(&p, &s) + potential_energy(&p, &s);
        let dt = 1e-4;
        let step = |s: &GeneralizedState| -> GeneralizedState {
            let f = |st: &GeneralizedState| {
                let t = assemble_terms_unchecked(&p, st);
                let rhs = ControlInput::zero().zeta() - t.c * st.qdot - t.gvec;
                (
                    st.qdot,
                    t.m.cholesky().expect("M positive definite").solve(&rhs),
                )
            };
            let (k1q, k1v) = f(s);
            let s2 = GeneralizedState::new(s.q + k1q * (dt / 2.0), s.qdot + k1v * (dt / 2.0));
            let (k2q, k2v) = f(&s2);
            let s3 = GeneralizedState::new(s.q + k2q * (dt / 2.0), s.qdot + k2v * (dt / 2.0));
            let (k3q, k3v) = f(&s3);
            let s4 = GeneralizedState::new(s.q + k3q * dt, s.qdot + k3v * dt);
            let (k4q, k4v) = f(&s4);
            GeneralizedState::new(
                s.q + (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * (dt / 6.0),
                s.qdot + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (dt / 6.0),
            )
        };
        let mut max_dev = 0.0_f64;
        for _ in 0..100_000 {
            s = step(&s);
            let e = kinetic_energy(&p, &s) + potential_energy(&p, &s);
            max_dev = max_dev.max((e - e0).abs());
        }
        let rel = max_dev / e0.abs();
        ok &= check(
            "total mechanical energy conserved over 10 s at dt = 1e-4",
            rel <= 1e-5,
            format!("|dE|/|E0| = {rel:.3e} (limit 1e-5)"),
        );
    }

    // closed loop: central-difference dV/dt against -sum kd xdot^2
    {
        let mut cfg = scenario(1).unwrap();
        cfg.t_final = 5.0;
        let log = run_scenario(&cfg).unwrap();
        let mut peak = 0.0_f64;
        let mut worst = 0.0_f64;
        for i in 1..log.rows.len() - 1 {
            let fd = (log.rows[i + 1].lyapunov - log.rows[i - 1].lyapunov) / (2.0 * cfg.dt);
            let s = GeneralizedState::new(
                Vector6::from_row_slice(&log.rows[i].q),
                Vector6::from_row_slice(&log.rows[i].qdot),
            );
            let analytic = lyapunov_vdot_analytic(&s, &cfg.gains);
            peak = peak.max(analytic.abs());
            worst = worst.max((fd - analytic).abs());
        }
        let rel = worst / peak;
        ok &= check(
            "finite-difference dV/dt matches the closed-loop damping rate",
            rel <= 1e-4,
            format!("relative deviation {rel:.3e} (limit 1e-4)"),
        );
    }

    finish(2, "energy conservation and Lyapunov rate oracles", ok);
}

#[test]
fn acceptance_3_scenario_1_reproduction() {
    let mut ok = true;

    let cfg = scenario(1).unwrap();
    let wall = std::time::Instant::now();
    let log = run_scenario(&cfg).unwrap();
    let wall = wall.elapsed().as_secs_f64();
    let m = metrics(&log, &cfg.setpoint);

    ok &= check(
        "wall clock for 150 simulated seconds",
        wall < 60.0,
        format!("{wall:.2} s (limit 60 s)"),
    );

    // settling verified on a 400 s horizon so that a permanent band entry
    // anywhere near the 200 s bound is observable with margin; the slowest
    // coordinate's settling time must lie in [50, 200]
    let mut cfg_long = cfg.clone();
    cfg_long.t_final = 400.0;
    let m_long = metrics(&run_scenario(&cfg_long).unwrap(), &cfg.setpoint);
    let names = ["slew", "boom", "jib", "cable"];
    let mut slowest: f64 = 0.0;
    let mut all_settled = true;
    for (name, settle) in names.iter().zip(&m_long.settling_time) {
        match settle {
            Some(t) => {
                slowest = slowest.max(*t);
                println!("    {name} settles at {t:.1} s");
            }
            None => {
                all_settled = false;
                println!("    {name} did not settle within 400 s");
            }
        }
    }
    ok &= check(
        "all actuated coordinates settle with overall settling in [50, 200] s",
        all_settled && (50.0..=200.0).contains(&slowest),
        format!(
            "slowest settling {} (required within [50, 200] s)",
            if all_settled {
                format!("{slowest:.1} s")
            } else {
                "never".into()
            }
        ),
    );

    let v0 = log.rows[0].lyapunov;
    ok &= check(
        "final V below 1e-3 of V(0)",
        m.final_v <= 1e-3 * v0,
        format!("V(end)/V(0) = {:.3e} (limit 1e-3)", m.final_v / v0),
    );

    ok &= check(
        "residual swing within 0.5 deg over the final fifth",
        m.residual_swing[0].to_degrees() <= 0.5 && m.residual_swing[1].to_degrees() <= 0.5,
        format!(
            "tangential {:.3} deg, radial {:.3} deg (limit 0.5 deg)",
            m.residual_swing[0].to_degrees(),
            m.residual_swing[1].to_degrees()
        ),
    );

    finish(3, "scenario 1 reproduction", ok);
}

#[test]
fn acceptance_4_scenario_2_swing_damping() {
    let mut ok = true;
    let cfg = scenario(2).unwrap();
    assert_eq!(cfg.initial_state.theta1(), 0.2);
    assert_eq!(cfg.initial_state.theta2(), 0.1);
    let log = run_scenario(&cfg).unwrap();
    let m = metrics(&log, &cfg.setpoint);

    ok &= check(
        "residual swing within 1 deg over the final fifth",
        m.residual_swing[0].to_degrees() <= 1.0 && m.residual_swing[1].to_degrees() <= 1.0,
        format!(
            "tangential {:.3} deg, radial {:.3} deg (limit 1 deg)",
            m.residual_swing[0].to_degrees(),
            m.residual_swing[1].to_degrees()
        ),
    );

    let v0 = log.rows[0].lyapunov;
    let tol = 1e-6 * v0;
    let worst_increase = log
        .rows
        .windows(2)
        .map(|w| w[1].lyapunov - w[0].lyapunov)
        .fold(f64::NEG_INFINITY, f64::max);
    ok &= check(
        "V monotone nonincreasing within per-step tolerance",
        worst_increase <= tol,
        format!("worst per-step increase {worst_increase:.3e} (tolerance {tol:.3e})"),
    );

    finish(4, "scenario 2 swing damping", ok);
}

#[test]
fn acceptance_5_scenario_3_mismatch_equilibrium() {
    let mut ok = true;
    let cfg = scenario(3).unwrap();
    let (m_plant, m_nom) = (cfg.plant_params.m, cfg.nominal_params.m);
    assert_eq!(m_plant, 50.0);
    assert_eq!(m_nom, 100.0);

    let log = run_scenario(&cfg).unwrap();
    let last = log.final_state();
    let g = cfg.plant_params.g;
    let (l_b, l_j) = (cfg.plant_params.l_b, cfg.plant_params.l_j);
    let k = cfg.gains;

    let e_d = cfg.setpoint.d_d - last.d();
    let e_beta = cfg.setpoint.beta_d - last.beta();
    let e_gamma = cfg.setpoint.gamma_d - last.gamma();

    let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / rhs.abs();

    let lhs = k.kp_d * e_d;
    let rhs = (m_nom - m_plant) * g;
    ok &= check(
        "hoist rest condition kp_d e_d = (m_nom - m_plant) g",
        rel(lhs, rhs) <= 0.01,
        format!("{lhs:.3} vs {rhs:.3} ({:.2}%)", 100.0 * rel(lhs, rhs)),
    );

    let lhs = k.kp_beta * e_beta;
    let rhs = g * l_b * last.beta().cos() * (m_plant - m_nom);
    ok &= check(
        "boom rest condition kp_b e_b = g l_b cos(b) (m_plant - m_nom)",
        rel(lhs, rhs) <= 0.01,
        format!("{lhs:.3} vs {rhs:.3} ({:.2}%)", 100.0 * rel(lhs, rhs)),
    );

    let lhs = k.kp_gamma * e_gamma;
    let rhs = g * l_j * last.gamma().cos() * (m_plant - m_nom);
    ok &= check(
        "jib rest condition kp_g e_g = g l_j cos(g) (m_plant - m_nom)",
        rel(lhs, rhs) <= 0.01,
        format!("{lhs:.3} vs {rhs:.3} ({:.2}%)", 100.0 * rel(lhs, rhs)),
    );

    finish(5, "scenario 3 analytic mismatch equilibrium", ok);
}

#[test]
fn acceptance_6_scenario_4_wind_gust() {
    let mut ok = true;
    let cfg = scenario(4).unwrap();
    let log = run_scenario(&cfg).unwrap();
    let m = metrics(&log, &cfg.setpoint);

    // the gust ends at 31 s; the final fifth of the run is well past it
    ok &= check(
        "post-gust residual swing: tangential within 1 deg",
        m.residual_swing[0].to_degrees() <= 1.0,
        format!("{:.3} deg (limit 1 deg)", m.residual_swing[0].to_degrees()),
    );
    ok &= check(
        "post-gust residual swing: radial within 2 deg",
        m.residual_swing[1].to_degrees() <= 2.0,
        format!("{:.3} deg (limit 2 deg)", m.residual_swing[1].to_degrees()),
    );

    let names = ["slew", "boom", "jib", "cable"];
    let mut resettled = true;
    for (name, settle) in names.iter().zip(&m.settling_time) {
        match settle {
            Some(t) => println!("    {name} back in band from {t:.1} s"),
            None => {
                resettled = false;
                println!("    {name} not permanently in band by 150 s");
            }
        }
    }
    ok &= check(
        "actuated coordinates re-enter the 2% band after the gust",
        resettled,
        String::new(),
    );

    finish(6, "scenario 4 wind gust rejection", ok);
}

#[test]
fn acceptance_7_lqr_pipeline() {
    let mut ok = true;

    let cfg = scenario(1).unwrap();
    let model = linearize(&cfg.nominal_params, &cfg.setpoint, LINEARIZE_FD_STEP).unwrap();
    let weights = LqrWeights::default();
    let ctl = LqrController::design(model.clone(), &weights).unwrap();

    // Riccati residual with the bundled weights
    let a = DMatrix::from_fn(12, 12, |i, j| model.a[(i, j)]);
    let b = DMatrix::from_fn(12, 4, |i, j| model.b[(i, j)]);
    let q = DMatrix::from_fn(12, 12, |i, j| if i == j { weights.q[i] } else { 0.0 });
    let r = DMatrix::from_fn(4, 4, |i, j| if i == j { weights.r[i] } else { 0.0 });
    let p = DMatrix::from_fn(12, 12, |i, j| ctl.riccati[(i, j)]);
    let resid = (a.transpose() * &p + &p * &a
        - &p * &b * r.clone().try_inverse().unwrap() * b.transpose() * &p
        + &q)
        .norm();
    ok &= check(
        "Riccati residual within 1e-6 of |Q|",
        resid <= 1e-6 * q.norm(),
        format!("residual/|Q| = {:.3e} (limit 1e-6)", resid / q.norm()),
    );

    let k = DMatrix::from_fn(4, 12, |i, j| ctl.gain[(i, j)]);
    let abscissa = spectral_abscissa(&(&a - &b * &k));
    ok &= check(
        "closed-loop A - B K strictly stable",
        abscissa < 0.0,
        format!("spectral abscissa {abscissa:.3e}"),
    );

    // nominal scenario under the LQR
    let mut cfg_lqr = scenario(1).unwrap();
    cfg_lqr.controller = ControllerKind::Lqr;
    let lqr_nominal = run_scenario(&cfg_lqr);
    let settled = match &lqr_nominal {
        Ok(log) => {
            let m = metrics(log, &cfg_lqr.setpoint);
            let detail = format!("settling {:?}", m.settling_time);
            let all = m.settling_time.iter().all(|t| t.is_some());
            check("nominal LQR run settles", all, detail)
        }
        Err(e) => check(
            "nominal LQR run settles",
            false,
            format!("run aborted: {e}"),
        ),
    };
    ok &= settled;

    // mass-mismatch comparison: LQR must track strictly worse than the
    // nonlinear law on the hoist and boom coordinates
    let cfg_pd3 = scenario(3).unwrap();
    let pd3 = metrics(&run_scenario(&cfg_pd3).unwrap(), &cfg_pd3.setpoint);
    let mut cfg_lqr3 = scenario(3).unwrap();
    cfg_lqr3.controller = ControllerKind::Lqr;
    match run_scenario(&cfg_lqr3) {
        Ok(log) => {
            let l3 = metrics(&log, &cfg_lqr3.setpoint);
            let worse_d = l3.final_error[3].abs() > pd3.final_error[3].abs();
            let worse_b = l3.final_error[1].abs() > pd3.final_error[1].abs();
            ok &= check(
                "LQR tracking degrades under mass mismatch (hoist, boom)",
                worse_d && worse_b,
                format!(
                    "|e_d| {:.4} vs {:.4}, |e_b| {:.4} vs {:.4} (LQR vs nonlinear)",
                    l3.final_error[3].abs(),
                    pd3.final_error[3].abs(),
                    l3.final_error[1].abs(),
                    pd3.final_error[1].abs()
                ),
            );
        }
        Err(e) => {
            ok &= check(
                "LQR tracking degrades under mass mismatch (hoist, boom)",
                false,
                format!("LQR run aborted: {e}"),
            );
        }
    }

    finish(7, "LQR pipeline", ok);
}

#[test]
fn acceptance_8_integrator_order() {
    let run_at = |dt: f64| {
        let mut c = scenario(1).unwrap();
        c.dt = dt;
        c.t_final = 10.0;
        run_scenario(&c).unwrap().final_state()
    };
    let x1 = run_at(4e-3);
    let x2 = run_at(2e-3);
    let x3 = run_at(1e-3);
    let e1 = ((x1.q - x2.q).norm_squared() + (x1.qdot - x2.qdot).norm_squared()).sqrt();
    let e2 = ((x2.q - x3.q).norm_squared() + (x2.qdot - x3.qdot).norm_squared()).sqrt();
    let order = (e1 / e2).log2();
    let ok = check(
        "observed convergence order of the step-halving study",
        order >= 3.5,
        format!("order {order:.2} (e1 = {e1:.3e}, e2 = {e2:.3e}; limit 3.5)"),
    );
    finish(8, "integrator order", ok);
}

#[test]
fn acceptance_9_determinism() {
    let mut ok = true;
    for n in [1u8, 5] {
        let mut cfg = scenario(n).unwrap();
        cfg.rng_seed = 7;
        let a = csv_bytes(&run_scenario(&cfg).unwrap());
        let b = csv_bytes(&run_scenario(&cfg).unwrap());
        ok &= check(
            &format!("scenario {n} re-run is byte-identical"),
            a == b,
            format!("{} bytes", a.len()),
        );
    }
    finish(9, "determinism", ok);
}

/// The guard chain surfaces domain violations with their time stamp; a
/// run aborted mid-flight reports when, not just that, it left the domain.
#[test]
fn aborted_runs_are_time_stamped() {
    let mut cfg = scenario(1).unwrap();
    cfg.controller = ControllerKind::Lqr; // known to leave the domain
    match run_scenario(&cfg) {
        Err(CraneError::DomainViolation { time: Some(t), .. }) => {
            assert!(t > 0.0 && t < 150.0);
        }
        other => panic!("expected a timed domain violation, got {other:?}"),
    }
}
