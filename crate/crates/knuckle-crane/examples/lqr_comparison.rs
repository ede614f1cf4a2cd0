//! Design the LQR baseline on the numerically linearized model and compare
//! it with the nonlinear controller on the nominal scenario.
//!
//! With the bundled weights the Riccati solve and the linear closed loop
//! are sound (residual ~1e-10 |Q|, spectral abscissa < 0), but the gain
//! couples the hoist to the luff errors so strongly that, started from the
//! bundled pose far outside the linearization's neighborhood, the feedback
//! drives the plant out of its admissible domain. The example reports
//! whatever each controller actually does.
//!
//!     cargo run --release --example lqr_comparison

use nalgebra::DMatrix;

use knuckle_crane::control::{
    linearize, lqr::LqrController, riccati::spectral_abscissa, ControllerKind, LqrWeights,
    LINEARIZE_FD_STEP,
};
use knuckle_crane::sim::{metrics, run_scenario, scenarios::scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = scenario(1)?;
    let model = linearize(&cfg.nominal_params, &cfg.setpoint, LINEARIZE_FD_STEP)?;
    let ctl = LqrController::design(model.clone(), &LqrWeights::default())?;

    let a = DMatrix::from_fn(12, 12, |i, j| model.a[(i, j)]);
    let b = DMatrix::from_fn(12, 4, |i, j| model.b[(i, j)]);
    let k = DMatrix::from_fn(4, 12, |i, j| ctl.gain[(i, j)]);
    println!(
        "LQR design: |K| = {:.1}, closed-loop spectral abscissa = {:.3e}",
        k.norm(),
        spectral_abscissa(&(&a - &b * &k))
    );

    for (label, kind) in [
        (
            "nonlinear PD + gravity compensation",
            ControllerKind::PdGravity,
        ),
        ("LQR around the setpoint equilibrium", ControllerKind::Lqr),
    ] {
        let mut c = scenario(1)?;
        c.controller = kind;
        match run_scenario(&c) {
            Ok(log) => {
                let m = metrics(&log, &c.setpoint);
                println!("{label}:");
                for (i, name) in ["slew", "boom", "jib", "cable"].iter().enumerate() {
                    match m.settling_time[i] {
                        Some(t) => println!("  {name:<5} settles at {t:.1} s"),
                        None => println!(
                            "  {name:<5} not settled by {} s (final error {:+.4})",
                            c.t_final, m.final_error[i]
                        ),
                    }
                }
            }
            Err(e) => println!("{label}: run aborted — {e}"),
        }
    }
    Ok(())
}
