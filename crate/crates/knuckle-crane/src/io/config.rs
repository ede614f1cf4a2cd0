//! TOML run configuration: a flat key/value file whose sections mirror
//! [`ScenarioConfig`]. Angles are radians, lengths meters, times seconds.
//!
//! A minimal file only needs the sections that differ from the reference
//! preset semantics; link inertias and gravity default when omitted.

use nalgebra::{Vector3, Vector6};
use serde::{Deserialize, Serialize};

use crate::control::{ControlGains, ControllerKind, LqrWeights};
use crate::energy::Setpoint;
use crate::error::{CraneError, Result};
use crate::params::{CraneParams, DEFAULT_TOWER_INERTIA, STANDARD_GRAVITY};
use crate::sim::{DisturbanceKind, DisturbanceSpec, NoiseSpec, ScenarioConfig};
use crate::state::GeneralizedState;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct RawConfig {
    controller: String,
    dt: f64,
    t_final: f64,
    rng_seed: u64,
    setpoint: RawSetpoint,
    initial_state: RawState,
    plant_params: RawParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    nominal_params: Option<RawParams>,
    gains: RawGains,
    #[serde(skip_serializing_if = "Option::is_none")]
    lqr_weights: Option<RawLqrWeights>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    disturbances: Vec<RawDisturbance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise: Option<RawNoise>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSetpoint {
    alpha: f64,
    beta: f64,
    gamma: f64,
    d: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawState {
    q: [f64; 6],
    qdot: [f64; 6],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawParams {
    m_b: f64,
    m_j: f64,
    m: f64,
    l_b: f64,
    l_j: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    i_tot: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i_j: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawGains {
    kp_alpha: f64,
    kp_beta: f64,
    kp_gamma: f64,
    kp_d: f64,
    kd_alpha: f64,
    kd_beta: f64,
    kd_gamma: f64,
    kd_d: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawLqrWeights {
    q: [f64; 12],
    r: [f64; 4],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawDisturbance {
    kind: String,
    t_start: f64,
    duration: f64,
    force_world: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawNoise {
    sigma_angles: f64,
    sigma_d: f64,
    seed: u64,
}

impl RawParams {
    fn build(&self) -> CraneParams {
        let mut p = CraneParams::new(self.m_b, self.m_j, self.m, self.l_b, self.l_j);
        p.i_tot = self.i_tot.unwrap_or(DEFAULT_TOWER_INERTIA);
        if let Some(v) = self.i_b {
            p.i_b = v;
        }
        if let Some(v) = self.i_j {
            p.i_j = v;
        }
        p.g = self.g.unwrap_or(STANDARD_GRAVITY);
        p
    }

    fn from_params(p: &CraneParams) -> Self {
        Self {
            m_b: p.m_b,
            m_j: p.m_j,
            m: p.m,
            l_b: p.l_b,
            l_j: p.l_j,
            i_tot: Some(p.i_tot),
            i_b: Some(p.i_b),
            i_j: Some(p.i_j),
            g: Some(p.g),
        }
    }
}

impl RawConfig {
    pub(crate) fn build(&self) -> Result<ScenarioConfig> {
        let controller = match self.controller.as_str() {
            "pd" => ControllerKind::PdGravity,
            "lqr" => ControllerKind::Lqr,
            other => {
                return Err(CraneError::Config(format!(
                    "controller must be \"pd\" or \"lqr\", got {other:?}"
                )))
            }
        };
        let mut disturbances = Vec::new();
        for d in &self.disturbances {
            match d.kind.as_str() {
                "wind_gust" => disturbances.push(DisturbanceSpec {
                    kind: DisturbanceKind::WindGust,
                    t_start: d.t_start,
                    duration: d.duration,
                    force_world: Vector3::from_row_slice(&d.force_world),
                }),
                other => {
                    return Err(CraneError::Config(format!(
                        "unknown disturbance kind {other:?} (supported: \"wind_gust\")"
                    )))
                }
            }
        }
        let plant = self.plant_params.build();
        let cfg = ScenarioConfig {
            setpoint: Setpoint::new(
                self.setpoint.alpha,
                self.setpoint.beta,
                self.setpoint.gamma,
                self.setpoint.d,
            ),
            initial_state: GeneralizedState::new(
                Vector6::from_row_slice(&self.initial_state.q),
                Vector6::from_row_slice(&self.initial_state.qdot),
            ),
            plant_params: plant,
            nominal_params: self
                .nominal_params
                .as_ref()
                .map(|p| p.build())
                .unwrap_or(plant),
            controller,
            gains: ControlGains {
                kp_alpha: self.gains.kp_alpha,
                kp_beta: self.gains.kp_beta,
                kp_gamma: self.gains.kp_gamma,
                kp_d: self.gains.kp_d,
                kd_alpha: self.gains.kd_alpha,
                kd_beta: self.gains.kd_beta,
                kd_gamma: self.gains.kd_gamma,
                kd_d: self.gains.kd_d,
            },
            lqr_weights: self
                .lqr_weights
                .as_ref()
                .map(|w| LqrWeights { q: w.q, r: w.r }),
            disturbances,
            noise: self.noise.as_ref().map(|n| NoiseSpec {
                sigma_angles: n.sigma_angles,
                sigma_d: n.sigma_d,
                seed: n.seed,
            }),
            dt: self.dt,
            t_final: self.t_final,
            rng_seed: self.rng_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub(crate) fn from_config(cfg: &ScenarioConfig) -> Self {
        Self {
            controller: match cfg.controller {
                ControllerKind::PdGravity => "pd".into(),
                ControllerKind::Lqr => "lqr".into(),
            },
            dt: cfg.dt,
            t_final: cfg.t_final,
            rng_seed: cfg.rng_seed,
            setpoint: RawSetpoint {
                alpha: cfg.setpoint.alpha_d,
                beta: cfg.setpoint.beta_d,
                gamma: cfg.setpoint.gamma_d,
                d: cfg.setpoint.d_d,
            },
            initial_state: RawState {
                q: cfg.initial_state.q.into(),
                qdot: cfg.initial_state.qdot.into(),
            },
            plant_params: RawParams::from_params(&cfg.plant_params),
            nominal_params: if cfg.nominal_params == cfg.plant_params {
                None
            } else {
                Some(RawParams::from_params(&cfg.nominal_params))
            },
            gains: RawGains {
                kp_alpha: cfg.gains.kp_alpha,
                kp_beta: cfg.gains.kp_beta,
                kp_gamma: cfg.gains.kp_gamma,
                kp_d: cfg.gains.kp_d,
                kd_alpha: cfg.gains.kd_alpha,
                kd_beta: cfg.gains.kd_beta,
                kd_gamma: cfg.gains.kd_gamma,
                kd_d: cfg.gains.kd_d,
            },
            lqr_weights: cfg.lqr_weights.map(|w| RawLqrWeights { q: w.q, r: w.r }),
            disturbances: cfg
                .disturbances
                .iter()
                .map(|d| RawDisturbance {
                    kind: match d.kind {
                        DisturbanceKind::WindGust => "wind_gust".into(),
                    },
                    t_start: d.t_start,
                    duration: d.duration,
                    force_world: d.force_world.into(),
                })
                .collect(),
            noise: cfg.noise.map(|n| RawNoise {
                sigma_angles: n.sigma_angles,
                sigma_d: n.sigma_d,
                seed: n.seed,
            }),
        }
    }
}

/// Parse a TOML run configuration (manifests parse too: their extra
/// `[manifest]` table is ignored).
pub fn config_from_toml(text: &str) -> Result<ScenarioConfig> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| CraneError::Config(format!("TOML parse: {e}")))?;
    raw.build()
}

/// Serialize a fully resolved configuration to TOML.
pub fn config_to_toml(cfg: &ScenarioConfig) -> String {
    toml::to_string_pretty(&RawConfig::from_config(cfg)).expect("config serialization is total")
}
