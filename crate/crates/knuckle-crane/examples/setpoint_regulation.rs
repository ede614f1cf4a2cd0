//! Drive the crane from rest to the bundled target pose (slew 60 deg,
//! boom 30 deg, jib 22 deg, cable 2 m) with the nonlinear PD + gravity
//! compensation law, then write the trajectory CSV and plots.
//!
//!     cargo run --release --example setpoint_regulation

use knuckle_crane::io::{csv_bytes, standard_plots};
use knuckle_crane::sim::{metrics, run_scenario, scenarios::scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = scenario(1)?;
    let log = run_scenario(&cfg)?;
    let m = metrics(&log, &cfg.setpoint);

    println!(
        "nominal setpoint regulation, {} s at dt = {} s",
        cfg.t_final, cfg.dt
    );
    let names = ["slew", "boom", "jib", "cable"];
    for (i, name) in names.iter().enumerate() {
        match m.settling_time[i] {
            Some(t) => println!("  {name:<5} settles (2% band) at {t:.1} s"),
            None => println!(
                "  {name:<5} not settled by {} s (final error {:+.4})",
                cfg.t_final, m.final_error[i]
            ),
        }
    }
    println!(
        "  residual swing over the final fifth: tangential {:.2} deg, radial {:.2} deg",
        m.residual_swing[0].to_degrees(),
        m.residual_swing[1].to_degrees()
    );
    println!(
        "  V(0) = {:.1}, V(end) = {:.3}",
        log.rows[0].lyapunov, m.final_v
    );

    let dir = std::path::Path::new("out/setpoint_regulation");
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("trajectory.csv"), csv_bytes(&log))?;
    for (name, svg) in standard_plots(&log, &cfg.setpoint) {
        std::fs::write(dir.join(name), svg)?;
    }
    println!("wrote CSV and plots to {}", dir.display());
    Ok(())
}
