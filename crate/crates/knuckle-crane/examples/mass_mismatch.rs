//! Robustness to payload mass mismatch: the plant carries 50 kg while the
//! controller compensates gravity for 100 kg. The loop stays stable and
//! comes to rest at a predictable offset equilibrium where the
//! proportional terms balance the uncompensated weight; this example
//! checks those rest conditions numerically.
//!
//!     cargo run --release --example mass_mismatch

use knuckle_crane::sim::{run_scenario, scenarios::scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = scenario(3)?;
    let (m_plant, m_nom) = (cfg.plant_params.m, cfg.nominal_params.m);
    println!("plant payload {m_plant} kg, controller believes {m_nom} kg");

    let log = run_scenario(&cfg)?;
    let s = log.final_state();
    let g = cfg.plant_params.g;
    let k = cfg.gains;

    let e_d = cfg.setpoint.d_d - s.d();
    let e_b = cfg.setpoint.beta_d - s.beta();
    let e_g = cfg.setpoint.gamma_d - s.gamma();
    println!(
        "steady-state offsets: e_d = {:.4} m, e_beta = {:.3} deg, e_gamma = {:.3} deg",
        e_d,
        e_b.to_degrees(),
        e_g.to_degrees()
    );

    let rows = [
        ("hoist", k.kp_d * e_d, (m_nom - m_plant) * g),
        (
            "boom",
            k.kp_beta * e_b,
            g * cfg.plant_params.l_b * s.beta().cos() * (m_plant - m_nom),
        ),
        (
            "jib",
            k.kp_gamma * e_g,
            g * cfg.plant_params.l_j * s.gamma().cos() * (m_plant - m_nom),
        ),
    ];
    println!("rest conditions (proportional term vs uncompensated weight):");
    for (name, lhs, rhs) in rows {
        println!(
            "  {:<5} {:>9.3} vs {:>9.3}  ({:.2}% apart)",
            name,
            lhs,
            rhs,
            100.0 * ((lhs - rhs) / rhs).abs()
        );
    }
    Ok(())
}
