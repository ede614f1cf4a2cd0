//! Closed-loop simulation: fixed-step RK4 integration, disturbance and
//! measurement-noise models, and the scenario runner.

pub mod metrics;
pub mod scenarios;

pub use metrics::{metrics, MetricsReport};

use nalgebra::{Vector3, Vector6};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::control::{
    linearize, lqr::LqrController, pd_gravity_control, ControlGains, ControllerKind, LqrWeights,
    LINEARIZE_FD_STEP,
};
use crate::dynamics::forward_dynamics_unchecked;
use crate::energy::{energy_function, lyapunov_v, Setpoint};
use crate::error::{CraneError, Result};
use crate::kinematics::payload_jacobian;
use crate::params::CraneParams;
use crate::state::{ControlInput, GeneralizedState};

/// Default integrator step \[s\].
pub const DEFAULT_DT: f64 = 1e-3;

/// Default run length \[s\].
pub const DEFAULT_T_FINAL: f64 = 150.0;

/// An external disturbance acting on the plant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceSpec {
    pub kind: DisturbanceKind,
    /// Onset time \[s\].
    pub t_start: f64,
    /// Active window length \[s\].
    pub duration: f64,
    /// World-frame force on the payload \[N\].
    pub force_world: Vector3<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisturbanceKind {
    /// Rectangular force pulse on the payload, mapped to generalized
    /// forces through the payload Jacobian transpose.
    WindGust,
}

impl DisturbanceSpec {
    pub fn wind_gust(t_start: f64, duration: f64, force_world: Vector3<f64>) -> Self {
        Self {
            kind: DisturbanceKind::WindGust,
            t_start,
            duration,
            force_world,
        }
    }

    fn active(&self, t: f64) -> bool {
        t >= self.t_start && t < self.t_start + self.duration
    }
}

/// Additive zero-mean Gaussian noise on the position measurements the
/// controller sees. The plant state itself stays exact, and rate
/// measurements are left clean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Standard deviation on measured angles (slew, luffs, swings) \[rad\].
    pub sigma_angles: f64,
    /// Standard deviation on the measured cable length \[m\].
    pub sigma_d: f64,
    /// Noise stream selector, combined with the run seed.
    pub seed: u64,
}

/// Full description of one simulation run.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub setpoint: Setpoint,
    pub initial_state: GeneralizedState,
    /// Parameters the plant integrates with.
    pub plant_params: CraneParams,
    /// Parameters the controller believes.
    pub nominal_params: CraneParams,
    pub controller: ControllerKind,
    pub gains: ControlGains,
    /// Weights for the LQR design; defaults used when absent.
    pub lqr_weights: Option<LqrWeights>,
    pub disturbances: Vec<DisturbanceSpec>,
    pub noise: Option<NoiseSpec>,
    pub dt: f64,
    pub t_final: f64,
    pub rng_seed: u64,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.plant_params.validate()?;
        self.nominal_params.validate()?;
        self.gains.validate()?;
        self.setpoint.validate()?;
        if let Some(w) = &self.lqr_weights {
            w.validate()?;
        }
        if self.dt <= 0.0 || !self.dt.is_finite() {
            return Err(CraneError::Config(format!("dt = {} must be > 0", self.dt)));
        }
        if self.t_final < self.dt || !self.t_final.is_finite() {
            return Err(CraneError::Config(format!(
                "t_final = {} must be >= dt = {}",
                self.t_final, self.dt
            )));
        }
        for d in &self.disturbances {
            if d.duration <= 0.0 || !d.duration.is_finite() {
                return Err(CraneError::Config(format!(
                    "disturbance duration = {} must be > 0",
                    d.duration
                )));
            }
        }
        if let Some(n) = &self.noise {
            if n.sigma_angles < 0.0 || n.sigma_d < 0.0 {
                return Err(CraneError::Config("noise sigmas must be >= 0".into()));
            }
        }
        self.initial_state.check_admissible()?;
        Ok(())
    }

    /// Number of integration steps; the log holds one more row.
    pub fn n_steps(&self) -> usize {
        let ratio = self.t_final / self.dt;
        (ratio + 1e-9 * ratio.max(1.0)).floor() as usize
    }
}

/// One logged sample of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRow {
    pub t: f64,
    pub q: [f64; 6],
    pub qdot: [f64; 6],
    pub u: [f64; 4],
    pub energy: f64,
    pub lyapunov: f64,
}

/// Uniformly sampled trajectory of a run, one row per grid point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryLog {
    pub dt: f64,
    pub rows: Vec<LogRow>,
}

impl TrajectoryLog {
    pub fn last(&self) -> &LogRow {
        self.rows.last().expect("log is never empty")
    }

    pub fn final_state(&self) -> GeneralizedState {
        let r = self.last();
        GeneralizedState::new(
            Vector6::from_row_slice(&r.q),
            Vector6::from_row_slice(&r.qdot),
        )
    }
}

/// One classical RK4 step of the closed loop, re-evaluating the input
/// provider at every stage. The provider receives the time offset from the
/// start of the step.
pub fn step_rk4<F>(
    p: &CraneParams,
    s: &GeneralizedState,
    mut u_provider: F,
    dt: f64,
) -> Result<GeneralizedState>
where
    F: FnMut(f64, &GeneralizedState) -> Result<ControlInput>,
{
    let (next, _) = rk4_step_forced(p, s, 0.0, dt, &mut u_provider, &mut |_, _| {
        Ok(Vector6::zeros())
    })?;
    Ok(next)
}

/// RK4 step with an additional generalized-force provider; returns the new
/// state and the input applied at the first stage (used for logging).
pub(crate) fn rk4_step_forced<F, G>(
    p: &CraneParams,
    s: &GeneralizedState,
    t0: f64,
    dt: f64,
    u_provider: &mut F,
    force_provider: &mut G,
) -> Result<(GeneralizedState, ControlInput)>
where
    F: FnMut(f64, &GeneralizedState) -> Result<ControlInput>,
    G: FnMut(f64, &GeneralizedState) -> Result<Vector6<f64>>,
{
    let mut eval =
        |t: f64, state: &GeneralizedState| -> Result<(Vector6<f64>, Vector6<f64>, ControlInput)> {
            state.check_admissible().map_err(|e| e.at_time(t))?;
            let u = u_provider(t, state)?;
            if !u.is_finite() {
                return Err(CraneError::NonFiniteInput { time: t });
            }
            let extra = force_provider(t, state)?;
            let qdd = forward_dynamics_unchecked(p, state, &u, &extra).map_err(|e| e.at_time(t))?;
            Ok((state.qdot, qdd, u))
        };

    let (k1q, k1v, u1) = eval(t0, s)?;
    let half = 0.5 * dt;

    let s2 = GeneralizedState::new(s.q + k1q * half, s.qdot + k1v * half);
    let (k2q, k2v, _) = eval(t0 + half, &s2)?;

    let s3 = GeneralizedState::new(s.q + k2q * half, s.qdot + k2v * half);
    let (k3q, k3v, _) = eval(t0 + half, &s3)?;

    let s4 = GeneralizedState::new(s.q + k3q * dt, s.qdot + k3v * dt);
    let (k4q, k4v, _) = eval(t0 + dt, &s4)?;

    let sixth = dt / 6.0;
    let next = GeneralizedState::new(
        s.q + (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * sixth,
        s.qdot + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * sixth,
    );
    Ok((next, u1))
}

/// Map a world-frame force on the payload to generalized forces via the
/// payload Jacobian transpose.
pub fn wind_generalized_force(
    p: &CraneParams,
    s: &GeneralizedState,
    force_world: &Vector3<f64>,
) -> Vector6<f64> {
    payload_jacobian(p, s).transpose() * force_world
}

/// Run a closed-loop scenario and log every grid point.
///
/// The plant integrates with `plant_params`; the controller sees
/// `nominal_params` and noise-corrupted position measurements (a fresh
/// draw per control evaluation, including intermediate RK4 stages).
/// Disturbances act as generalized forces during their windows. Identical
/// configurations (seed included) produce bit-identical logs.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<TrajectoryLog> {
    cfg.validate()?;

    // controller preparation (LQR designs once, on nominal parameters)
    let lqr = match cfg.controller {
        ControllerKind::PdGravity => None,
        ControllerKind::Lqr => {
            let model = linearize(&cfg.nominal_params, &cfg.setpoint, LINEARIZE_FD_STEP)?;
            Some(LqrController::design(
                model,
                &cfg.lqr_weights.unwrap_or_default(),
            )?)
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    if let Some(noise) = &cfg.noise {
        rng.set_stream(noise.seed);
    }
    let noise = cfg.noise;

    let nominal = cfg.nominal_params;
    let setpoint = cfg.setpoint;
    let gains = cfg.gains;

    let mut u_provider = move |_t: f64, state: &GeneralizedState| -> Result<ControlInput> {
        let measured = match &noise {
            None => *state,
            Some(n) => {
                let mut q = state.q;
                for (idx, sigma) in [
                    (0, n.sigma_angles),
                    (1, n.sigma_angles),
                    (2, n.sigma_angles),
                    (3, n.sigma_d),
                    (4, n.sigma_angles),
                    (5, n.sigma_angles),
                ] {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    q[idx] += sigma * z;
                }
                GeneralizedState::new(q, state.qdot)
            }
        };
        Ok(match &lqr {
            None => pd_gravity_control(&nominal, &measured, &setpoint, &gains),
            Some(ctl) => ctl.control(&measured),
        })
    };

    let plant = cfg.plant_params;
    let disturbances = cfg.disturbances.clone();
    let mut force_provider = move |t: f64, state: &GeneralizedState| -> Result<Vector6<f64>> {
        let mut f = Vector6::zeros();
        for d in &disturbances {
            if d.active(t) {
                match d.kind {
                    DisturbanceKind::WindGust => {
                        f += wind_generalized_force(&plant, state, &d.force_world);
                    }
                }
            }
        }
        Ok(f)
    };

    let n_steps = cfg.n_steps();
    let mut log = TrajectoryLog {
        dt: cfg.dt,
        rows: Vec::with_capacity(n_steps + 1),
    };

    let mut s = cfg.initial_state;
    for step in 0..n_steps {
        let t = step as f64 * cfg.dt;
        let (next, u_applied) =
            rk4_step_forced(&plant, &s, t, cfg.dt, &mut u_provider, &mut force_provider)?;
        log.rows
            .push(make_row(&plant, &setpoint, &gains, t, &s, &u_applied));
        s = next;
    }
    // closing row at t_final with one more input evaluation for display
    let t_end = n_steps as f64 * cfg.dt;
    s.check_admissible().map_err(|e| e.at_time(t_end))?;
    let u_end = u_provider(t_end, &s)?;
    log.rows
        .push(make_row(&plant, &setpoint, &gains, t_end, &s, &u_end));

    Ok(log)
}

fn make_row(
    plant: &CraneParams,
    sp: &Setpoint,
    gains: &ControlGains,
    t: f64,
    s: &GeneralizedState,
    u: &ControlInput,
) -> LogRow {
    LogRow {
        t,
        q: [s.q[0], s.q[1], s.q[2], s.q[3], s.q[4], s.q[5]],
        qdot: [
            s.qdot[0], s.qdot[1], s.qdot[2], s.qdot[3], s.qdot[4], s.qdot[5],
        ],
        u: [u.u[0], u.u[1], u.u[2], u.u[3]],
        energy: energy_function(plant, s),
        lyapunov: lyapunov_v(plant, s, sp, gains),
    }
}
