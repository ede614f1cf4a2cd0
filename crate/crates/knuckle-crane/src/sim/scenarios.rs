//! Bundled scenario presets.
//!
//! All five share the same target pose (slew 60 deg, boom 30 deg, jib
//! 22 deg, cable 2 m), the reference rig and the reference gain set;
//! they differ in initial swing, plant/controller parameter mismatch,
//! external disturbance and measurement noise:
//!
//! 1. nominal motion from rest, no swing
//! 2. initial payload swing (0.2 rad tangential, 0.1 rad radial)
//! 3. payload mass mismatch (plant 50 kg, controller believes 100 kg)
//! 4. horizontal wind gust of 50 N hitting the payload at t = 30 s for 1 s
//! 5. measurement noise on the position channels (0.05 deg / 1 mm)

use nalgebra::{Vector3, Vector6};

use crate::control::{ControlGains, ControllerKind};
use crate::energy::Setpoint;
use crate::error::{CraneError, Result};
use crate::params::CraneParams;
use crate::sim::{DisturbanceSpec, NoiseSpec, ScenarioConfig, DEFAULT_DT, DEFAULT_T_FINAL};
use crate::state::GeneralizedState;

/// Initial cable length \[m\] shared by the presets.
pub const INITIAL_CABLE_LENGTH: f64 = 0.5;

/// Plant payload mass in the mismatch scenario \[kg\].
pub const MISMATCH_PAYLOAD_MASS: f64 = 50.0;

/// Wind gust of scenario 4: world-frame force \[N\], onset \[s\], length \[s\].
pub const WIND_FORCE: [f64; 3] = [50.0, 0.0, 0.0];
pub const WIND_T_START: f64 = 30.0;
pub const WIND_DURATION: f64 = 1.0;

/// Noise of scenario 5: 0.05 deg on angles, 1 mm on the cable length.
pub const NOISE_SIGMA_ANGLES: f64 = 0.05 * std::f64::consts::PI / 180.0;
pub const NOISE_SIGMA_D: f64 = 1e-3;
pub const NOISE_SEED: u64 = 42;

/// Target pose shared by all presets.
pub fn reference_setpoint() -> Setpoint {
    Setpoint::new(
        60.0_f64.to_radians(),
        30.0_f64.to_radians(),
        22.0_f64.to_radians(),
        2.0,
    )
}

fn base_config() -> ScenarioConfig {
    let p = CraneParams::reference();
    ScenarioConfig {
        setpoint: reference_setpoint(),
        initial_state: GeneralizedState::at_rest(Vector6::new(
            0.0,
            0.0,
            0.0,
            INITIAL_CABLE_LENGTH,
            0.0,
            0.0,
        )),
        plant_params: p,
        nominal_params: p,
        controller: ControllerKind::PdGravity,
        gains: ControlGains::reference(),
        lqr_weights: None,
        disturbances: vec![],
        noise: None,
        dt: DEFAULT_DT,
        t_final: DEFAULT_T_FINAL,
        rng_seed: 0,
    }
}

/// Build preset `n` in 1..=5.
pub fn scenario(n: u8) -> Result<ScenarioConfig> {
    let mut cfg = base_config();
    match n {
        1 => {}
        2 => {
            cfg.initial_state.q[4] = 0.2;
            cfg.initial_state.q[5] = 0.1;
        }
        3 => {
            cfg.plant_params = cfg.plant_params.with_payload_mass(MISMATCH_PAYLOAD_MASS);
        }
        4 => {
            cfg.disturbances = vec![DisturbanceSpec::wind_gust(
                WIND_T_START,
                WIND_DURATION,
                Vector3::from_row_slice(&WIND_FORCE),
            )];
        }
        5 => {
            cfg.noise = Some(NoiseSpec {
                sigma_angles: NOISE_SIGMA_ANGLES,
                sigma_d: NOISE_SIGMA_D,
                seed: NOISE_SEED,
            });
        }
        other => {
            return Err(CraneError::Config(format!(
                "unknown scenario {other}; presets are 1..=5"
            )))
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate() {
        for n in 1..=5 {
            scenario(n).unwrap().validate().unwrap();
        }
        assert!(scenario(0).is_err());
        assert!(scenario(6).is_err());
    }

    #[test]
    fn preset_three_has_the_mass_mismatch() {
        let cfg = scenario(3).unwrap();
        assert_eq!(cfg.plant_params.m, 50.0);
        assert_eq!(cfg.nominal_params.m, 100.0);
        // only the payload mass differs
        assert_eq!(cfg.plant_params.m_b, cfg.nominal_params.m_b);
        assert_eq!(cfg.plant_params.l_j, cfg.nominal_params.l_j);
    }

    #[test]
    fn preset_two_matches_the_swung_start() {
        let cfg = scenario(2).unwrap();
        assert_eq!(cfg.initial_state.theta1(), 0.2);
        assert_eq!(cfg.initial_state.theta2(), 0.1);
    }
}
