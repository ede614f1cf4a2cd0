//! Dynamics, anti-sway control, and simulation of a knuckle boom crane.
//!
//! The crate models a rotary crane with four actuated degrees of freedom
//! (tower slew, boom luff, jib luff, cable hoist) carrying a payload on a
//! rigid massless cable, giving six generalized coordinates overall: the
//! two payload swing angles receive no direct input. On top of the model
//! it provides
//!
//! - closed-form inertia / Coriolis / gravity terms with the structural
//!   properties (skew symmetry, gravity as a potential gradient) enforced
//!   by an executable property suite,
//! - a nonlinear PD + gravity-compensation setpoint controller that damps
//!   payload swing, with Lyapunov instrumentation,
//! - an LQR baseline built from numerical linearization and an algebraic
//!   Riccati solver,
//! - a fixed-step RK4 scenario runner with wind-gust and measurement-noise
//!   models, CSV trajectory logging, SVG plots, and reproducible manifests.
//!
//! Start with the runnable examples (`cargo run --release --example
//! setpoint_regulation`) or the `crane-sim` binary.

pub mod cli;
pub mod control;
pub mod dynamics;
pub mod energy;
pub mod error;
pub mod io;
pub mod kinematics;
pub mod params;
pub mod sim;
pub mod state;
pub mod verify;

pub use control::{pd_gravity_control, ControlGains, ControllerKind, LqrWeights};
pub use dynamics::{assemble_terms, forward_dynamics, gravity_from_potential, DynamicsTerms};
pub use energy::{
    energy_function, kinetic_energy, lyapunov_v, lyapunov_vdot_analytic, potential_energy,
    ErrorSignals, Setpoint,
};
pub use error::{CraneError, Result};
pub use kinematics::{payload_jacobian, payload_position};
pub use params::CraneParams;
pub use sim::{
    metrics, run_scenario, scenarios::scenario, step_rk4, wind_generalized_force, DisturbanceSpec,
    MetricsReport, NoiseSpec, ScenarioConfig, TrajectoryLog,
};
pub use state::{ControlInput, GeneralizedState};
