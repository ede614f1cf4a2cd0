//! Command-line front end.
//!
//! Subcommands: `simulate` (one scenario, one controller), `compare`
//! (the same scenario under the nonlinear controller and the LQR),
//! `verify` (the structural property suite).
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime or domain
//! error, 3 property-suite failure. When `--out` is omitted the output
//! directory comes from `CRANE_OUT_DIR`, falling back to `./out`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::control::ControllerKind;
use crate::error::{CraneError, Result};
use crate::io::{self, manifest::ManifestMeta};
use crate::sim::{metrics, run_scenario, scenarios, MetricsReport, ScenarioConfig, TrajectoryLog};
use crate::verify::run_property_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

/// Environment variable overriding the default output directory.
pub const OUT_DIR_ENV: &str = "CRANE_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "crane-sim",
    version,
    about = "Knuckle boom crane simulation: anti-sway setpoint control, LQR baseline, model verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run one scenario and write trajectory CSV, manifest, and plots.
    Simulate(SimulateArgs),
    /// Run a scenario under both controllers and write a comparison report.
    Compare(CompareArgs),
    /// Run the structural property suite on the crane model.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ControllerArg {
    Pd,
    Lqr,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Bundled scenario preset (1..=5).
    #[arg(long, conflicts_with = "config")]
    pub scenario: Option<u8>,
    /// TOML run configuration (a manifest from an earlier run also works).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override the feedback law.
    #[arg(long, value_enum)]
    pub controller: Option<ControllerArg>,
    /// Override the integrator step \[s\].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Override the run length \[s\].
    #[arg(long = "t-final")]
    pub t_final: Option<f64>,
    /// Output directory (default: $CRANE_OUT_DIR or ./out).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the run seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write SVG plots.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Args)]
pub struct CompareArgs {
    #[arg(long, conflicts_with = "config")]
    pub scenario: Option<u8>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "t-final")]
    pub t_final: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub plot: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Number of random admissible states.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Sampling seed.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

/// Parse argv and dispatch; returns the process exit code.
pub fn run() -> i32 {
    match Cli::parse().command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn out_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn load_config(scenario: Option<u8>, config: &Option<PathBuf>) -> Result<(ScenarioConfig, String)> {
    match (scenario, config) {
        (Some(n), None) => Ok((scenarios::scenario(n)?, format!("--scenario {n}"))),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            Ok((
                io::config_from_toml(&text)?,
                format!("--config {}", path.display()),
            ))
        }
        (None, None) => Err(CraneError::Config(
            "one of --scenario or --config is required".into(),
        )),
        (Some(_), Some(_)) => Err(CraneError::Config(
            "--scenario and --config are mutually exclusive".into(),
        )),
    }
}

fn apply_overrides(
    cfg: &mut ScenarioConfig,
    controller: Option<ControllerArg>,
    dt: Option<f64>,
    t_final: Option<f64>,
    seed: Option<u64>,
) {
    if let Some(c) = controller {
        cfg.controller = match c {
            ControllerArg::Pd => ControllerKind::PdGravity,
            ControllerArg::Lqr => ControllerKind::Lqr,
        };
    }
    if let Some(v) = dt {
        cfg.dt = v;
    }
    if let Some(v) = t_final {
        cfg.t_final = v;
    }
    if let Some(v) = seed {
        cfg.rng_seed = v;
    }
}

fn write_output(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, bytes)?;
    Ok(())
}

fn settle_str(s: &Option<f64>) -> String {
    match s {
        Some(t) => format!("{t:.1} s"),
        None => "did not settle".into(),
    }
}

fn print_metrics(label: &str, m: &MetricsReport) {
    println!("{label}:");
    let names = ["slew", "boom", "jib", "cable"];
    for (i, name) in names.iter().enumerate() {
        println!(
            "  {:<5} settling {:<16} final error {:+.5}",
            name,
            settle_str(&m.settling_time[i]),
            m.final_error[i]
        );
    }
    println!(
        "  residual swing: tangential {:.3} deg, radial {:.3} deg",
        m.residual_swing[0].to_degrees(),
        m.residual_swing[1].to_degrees()
    );
    println!(
        "  peak inputs: [{:.1}, {:.1}, {:.1}, {:.1}]",
        m.peak_input[0], m.peak_input[1], m.peak_input[2], m.peak_input[3]
    );
    println!("  final V: {:.6}", m.final_v);
}

fn exit_code_for(e: &CraneError) -> i32 {
    match e {
        CraneError::Config(_) | CraneError::InvalidParameter { .. } => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> i32 {
    let started = Instant::now();
    let (mut cfg, source) = match load_config(args.scenario, &args.config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    apply_overrides(&mut cfg, args.controller, args.dt, args.t_final, args.seed);

    let log = match run_scenario(&cfg) {
        Ok(log) => log,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let report = metrics(&log, &cfg.setpoint);

    let dir = out_dir(&args.out);
    let mut outputs = vec!["trajectory.csv".to_string(), "manifest.toml".to_string()];
    let mut files: Vec<(String, Vec<u8>)> = vec![("trajectory.csv".into(), io::csv_bytes(&log))];
    if args.plot {
        for (name, svg) in io::standard_plots(&log, &cfg.setpoint) {
            outputs.push(format!("plots/{name}"));
            files.push((format!("plots/{name}"), svg.into_bytes()));
        }
    }

    let meta = ManifestMeta {
        artifact_version: io::artifact_version(),
        command: format!("simulate {source}"),
        rng_seed: cfg.rng_seed,
        outputs: outputs.clone(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    files.push((
        "manifest.toml".into(),
        io::manifest_to_toml(&cfg, &meta).into_bytes(),
    ));

    for (name, bytes) in &files {
        if let Err(e) = write_output(&dir, name, bytes) {
            eprintln!("error writing {}: {e}", dir.join(name).display());
            return EXIT_RUNTIME;
        }
    }

    print_metrics("run metrics", &report);
    println!("outputs in {}", dir.display());
    EXIT_OK
}

pub fn cmd_compare(args: &CompareArgs) -> i32 {
    let started = Instant::now();
    let (mut cfg, source) = match load_config(args.scenario, &args.config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    apply_overrides(&mut cfg, None, args.dt, args.t_final, args.seed);

    let mut cfg_pd = cfg.clone();
    cfg_pd.controller = ControllerKind::PdGravity;
    let mut cfg_lqr = cfg.clone();
    cfg_lqr.controller = ControllerKind::Lqr;

    // the two runs are independent and seeded: run them concurrently
    let (pd_result, lqr_result) = std::thread::scope(|s| {
        let pd = s.spawn(|| run_scenario(&cfg_pd));
        let lqr = s.spawn(|| run_scenario(&cfg_lqr));
        (
            pd.join().expect("pd thread"),
            lqr.join().expect("lqr thread"),
        )
    });

    let dir = out_dir(&args.out);
    let mut outputs = vec!["manifest.toml".to_string()];
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut report_text = String::new();

    let pd_log: Option<TrajectoryLog> = match pd_result {
        Ok(log) => {
            outputs.push("pd.csv".into());
            files.push(("pd.csv".into(), io::csv_bytes(&log)));
            Some(log)
        }
        Err(e) => {
            report_text.push_str(&format!("nonlinear controller: run aborted: {e}\n"));
            eprintln!("nonlinear controller run aborted: {e}");
            None
        }
    };
    let lqr_log: Option<TrajectoryLog> = match lqr_result {
        Ok(log) => {
            outputs.push("lqr.csv".into());
            files.push(("lqr.csv".into(), io::csv_bytes(&log)));
            Some(log)
        }
        Err(e) => {
            // Riccati failures and mid-run domain violations are reported
            // distinctly so the comparison stays interpretable
            let kind = match &e {
                CraneError::RiccatiNoConvergence { .. } | CraneError::RiccatiUnstable { .. } => {
                    "LQR design failed (Riccati)"
                }
                _ => "LQR run aborted",
            };
            report_text.push_str(&format!("{kind}: {e}\n"));
            eprintln!("{kind}: {e}");
            None
        }
    };

    let fmt_metrics = |label: &str, m: &MetricsReport| -> String {
        let names = ["slew", "boom", "jib", "cable"];
        let mut s = format!("{label}\n");
        for (i, name) in names.iter().enumerate() {
            s.push_str(&format!(
                "  {:<5} settling {:<16} final error {:+.5}\n",
                name,
                settle_str(&m.settling_time[i]),
                m.final_error[i]
            ));
        }
        s.push_str(&format!(
            "  residual swing [deg]: tangential {:.3}, radial {:.3}\n",
            m.residual_swing[0].to_degrees(),
            m.residual_swing[1].to_degrees()
        ));
        s.push_str(&format!(
            "  peak inputs: [{:.1}, {:.1}, {:.1}, {:.1}]\n",
            m.peak_input[0], m.peak_input[1], m.peak_input[2], m.peak_input[3]
        ));
        s
    };

    if let Some(log) = &pd_log {
        report_text.push_str(&fmt_metrics(
            "nonlinear controller",
            &metrics(log, &cfg.setpoint),
        ));
    }
    if let Some(log) = &lqr_log {
        report_text.push_str(&fmt_metrics("LQR", &metrics(log, &cfg.setpoint)));
    }
    if let (Some(pd), Some(lqr)) = (&pd_log, &lqr_log) {
        let mp = metrics(pd, &cfg.setpoint);
        let ml = metrics(lqr, &cfg.setpoint);
        report_text.push_str("steady-state tracking |error| (nonlinear vs LQR):\n");
        for (i, name) in ["slew", "boom", "jib", "cable"].iter().enumerate() {
            report_text.push_str(&format!(
                "  {:<5} {:.6} vs {:.6}\n",
                name,
                mp.final_error[i].abs(),
                ml.final_error[i].abs()
            ));
        }
        if args.plot {
            for (name, svg) in io::comparison_plots(pd, lqr, &cfg.setpoint) {
                outputs.push(format!("plots/{name}"));
                files.push((format!("plots/{name}"), svg.into_bytes()));
            }
        }
    }

    outputs.push("metrics.txt".into());
    files.push(("metrics.txt".into(), report_text.clone().into_bytes()));

    let meta = ManifestMeta {
        artifact_version: io::artifact_version(),
        command: format!("compare {source}"),
        rng_seed: cfg.rng_seed,
        outputs,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    files.push((
        "manifest.toml".into(),
        io::manifest_to_toml(&cfg, &meta).into_bytes(),
    ));

    for (name, bytes) in &files {
        if let Err(e) = write_output(&dir, name, bytes) {
            eprintln!("error writing {}: {e}", dir.join(name).display());
            return EXIT_RUNTIME;
        }
    }

    print!("{report_text}");
    println!("outputs in {}", dir.display());
    if pd_log.is_none() || lqr_log.is_none() {
        return EXIT_RUNTIME;
    }
    EXIT_OK
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    match run_property_suite(
        &crate::params::CraneParams::reference(),
        args.samples,
        args.seed,
    ) {
        Ok(report) => {
            print!("{report}");
            if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_PROPERTY
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
