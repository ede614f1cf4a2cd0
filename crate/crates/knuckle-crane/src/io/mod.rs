//! File formats: trajectory CSV, TOML run configuration, run manifests,
//! and SVG plots.

pub mod config;
pub mod csv;
pub mod manifest;
pub mod plot;

pub use config::{config_from_toml, config_to_toml};
pub use csv::{csv_bytes, parse_csv, write_csv, CSV_HEADER};
pub use manifest::{artifact_version, manifest_from_toml, manifest_to_toml, ManifestMeta};

use crate::sim::TrajectoryLog;

/// Plot bundle built from one trajectory log: actuated coordinates with
/// their references, payload swing angles, actuator inputs. Angles are
/// plotted in degrees.
pub fn standard_plots(
    log: &TrajectoryLog,
    sp: &crate::energy::Setpoint,
) -> Vec<(&'static str, String)> {
    use plot::{Panel, Series, COLOR_PRIMARY, COLOR_REFERENCE};

    let t: Vec<f64> = log.rows.iter().map(|r| r.t).collect();
    let deg = |v: f64| v.to_degrees();

    let coord_panel = |title: &str, unit: &str, idx: usize, target: f64, in_deg: bool| -> Panel {
        let conv = |v: f64| if in_deg { deg(v) } else { v };
        Panel {
            title: title.into(),
            y_label: unit.into(),
            series: vec![
                Series {
                    label: title.into(),
                    color: COLOR_PRIMARY,
                    dashed: false,
                    points: t
                        .iter()
                        .zip(&log.rows)
                        .map(|(&t, r)| (t, conv(r.q[idx])))
                        .collect(),
                },
                Series {
                    label: "reference".into(),
                    color: COLOR_REFERENCE,
                    dashed: true,
                    points: vec![(t[0], conv(target)), (*t.last().unwrap(), conv(target))],
                },
            ],
        }
    };

    let actuated = plot::render(
        "actuated coordinates",
        "time [s]",
        &[
            coord_panel("slew angle", "deg", 0, sp.alpha_d, true),
            coord_panel("boom angle", "deg", 1, sp.beta_d, true),
            coord_panel("jib angle", "deg", 2, sp.gamma_d, true),
            coord_panel("cable length", "m", 3, sp.d_d, false),
        ],
        800,
        170,
    );

    let swing_panel = |title: &str, idx: usize| Panel {
        title: title.into(),
        y_label: "deg".into(),
        series: vec![Series {
            label: title.into(),
            color: COLOR_PRIMARY,
            dashed: false,
            points: t
                .iter()
                .zip(&log.rows)
                .map(|(&t, r)| (t, deg(r.q[idx])))
                .collect(),
        }],
    };
    let swing = plot::render(
        "payload swing angles",
        "time [s]",
        &[
            swing_panel("tangential swing", 4),
            swing_panel("radial swing", 5),
        ],
        800,
        200,
    );

    let input_panel = |title: &str, idx: usize, unit: &str| Panel {
        title: title.into(),
        y_label: unit.into(),
        series: vec![Series {
            label: title.into(),
            color: COLOR_PRIMARY,
            dashed: false,
            points: t
                .iter()
                .zip(&log.rows)
                .map(|(&t, r)| (t, r.u[idx]))
                .collect(),
        }],
    };
    let inputs = plot::render(
        "actuator inputs",
        "time [s]",
        &[
            input_panel("slew torque", 0, "N m"),
            input_panel("boom torque", 1, "N m"),
            input_panel("jib torque", 2, "N m"),
            input_panel("cable force", 3, "N"),
        ],
        800,
        150,
    );

    vec![
        ("actuated.svg", actuated),
        ("swing.svg", swing),
        ("inputs.svg", inputs),
    ]
}

/// Overlay plots for two runs of the same scenario under different
/// controllers.
pub fn comparison_plots(
    pd: &TrajectoryLog,
    lqr: &TrajectoryLog,
    sp: &crate::energy::Setpoint,
) -> Vec<(&'static str, String)> {
    use plot::{Panel, Series, COLOR_PRIMARY, COLOR_REFERENCE, COLOR_SECONDARY};

    let series_for = |log: &TrajectoryLog, idx: usize, in_deg: bool, label: &str, color| Series {
        label: label.into(),
        color,
        dashed: false,
        points: log
            .rows
            .iter()
            .map(|r| {
                (
                    r.t,
                    if in_deg {
                        r.q[idx].to_degrees()
                    } else {
                        r.q[idx]
                    },
                )
            })
            .collect(),
    };
    let panel = |title: &str, unit: &str, idx: usize, target: f64, in_deg: bool| -> Panel {
        let conv = |v: f64| if in_deg { v.to_degrees() } else { v };
        let t_end = pd.last().t.max(lqr.last().t);
        Panel {
            title: title.into(),
            y_label: unit.into(),
            series: vec![
                series_for(pd, idx, in_deg, "nonlinear", COLOR_PRIMARY),
                series_for(lqr, idx, in_deg, "LQR", COLOR_SECONDARY),
                Series {
                    label: "reference".into(),
                    color: COLOR_REFERENCE,
                    dashed: true,
                    points: vec![(0.0, conv(target)), (t_end, conv(target))],
                },
            ],
        }
    };

    let actuated = plot::render(
        "actuated coordinates: nonlinear vs LQR",
        "time [s]",
        &[
            panel("slew angle", "deg", 0, sp.alpha_d, true),
            panel("boom angle", "deg", 1, sp.beta_d, true),
            panel("jib angle", "deg", 2, sp.gamma_d, true),
            panel("cable length", "m", 3, sp.d_d, false),
        ],
        800,
        170,
    );

    let swing_panel = |title: &str, idx: usize| Panel {
        title: title.into(),
        y_label: "deg".into(),
        series: vec![
            series_for(pd, idx, true, "nonlinear", COLOR_PRIMARY),
            series_for(lqr, idx, true, "LQR", COLOR_SECONDARY),
        ],
    };
    let swing = plot::render(
        "payload swing: nonlinear vs LQR",
        "time [s]",
        &[
            swing_panel("tangential swing", 4),
            swing_panel("radial swing", 5),
        ],
        800,
        200,
    );

    let input_series = |log: &TrajectoryLog, idx: usize, label: &str, color| Series {
        label: label.into(),
        color,
        dashed: false,
        points: log.rows.iter().map(|r| (r.t, r.u[idx])).collect(),
    };
    let input_panel = |title: &str, idx: usize, unit: &str| Panel {
        title: title.into(),
        y_label: unit.into(),
        series: vec![
            input_series(pd, idx, "nonlinear", COLOR_PRIMARY),
            input_series(lqr, idx, "LQR", COLOR_SECONDARY),
        ],
    };
    let inputs = plot::render(
        "actuator inputs: nonlinear vs LQR",
        "time [s]",
        &[
            input_panel("slew torque", 0, "N m"),
            input_panel("boom torque", 1, "N m"),
            input_panel("jib torque", 2, "N m"),
            input_panel("cable force", 3, "N"),
        ],
        800,
        150,
    );

    vec![
        ("compare_actuated.svg", actuated),
        ("compare_swing.svg", swing),
        ("compare_inputs.svg", inputs),
    ]
}
