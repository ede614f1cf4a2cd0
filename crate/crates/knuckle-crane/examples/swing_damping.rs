//! Start with the payload already swinging (0.2 rad tangential, 0.1 rad
//! radial) and let the controller damp it while moving to the target pose.
//! Also demonstrates the Lyapunov instrumentation: V never increases along
//! the closed loop.
//!
//!     cargo run --release --example swing_damping

use knuckle_crane::sim::{metrics, run_scenario, scenarios::scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = scenario(2)?;
    println!(
        "initial swing: tangential {:.2} deg, radial {:.2} deg",
        cfg.initial_state.theta1().to_degrees(),
        cfg.initial_state.theta2().to_degrees()
    );

    let log = run_scenario(&cfg)?;
    let m = metrics(&log, &cfg.setpoint);

    let peak_th1 = log.rows.iter().map(|r| r.q[4].abs()).fold(0.0, f64::max);
    let peak_th2 = log.rows.iter().map(|r| r.q[5].abs()).fold(0.0, f64::max);
    println!(
        "peak swing during the move: tangential {:.2} deg, radial {:.2} deg",
        peak_th1.to_degrees(),
        peak_th2.to_degrees()
    );
    println!(
        "residual swing over the final fifth: tangential {:.2} deg, radial {:.2} deg",
        m.residual_swing[0].to_degrees(),
        m.residual_swing[1].to_degrees()
    );

    let worst_increase = log
        .rows
        .windows(2)
        .map(|w| w[1].lyapunov - w[0].lyapunov)
        .fold(f64::NEG_INFINITY, f64::max);
    println!(
        "V(0) = {:.1}, V(end) = {:.3}, worst per-step V increase = {:.2e}",
        log.rows[0].lyapunov, m.final_v, worst_increase
    );
    Ok(())
}
