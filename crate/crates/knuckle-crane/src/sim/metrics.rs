//! Convergence metrics extracted from a trajectory log.

use crate::energy::Setpoint;
use crate::sim::TrajectoryLog;

/// Fraction of the commanded step defining the settling band.
pub const SETTLING_BAND: f64 = 0.02;

/// Fraction of the run over which residual swing is measured.
pub const RESIDUAL_WINDOW: f64 = 0.2;

/// Summary of one run. Settling entries are `None` when the coordinate
/// never permanently enters its band ("did not settle").
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    /// Per actuated coordinate (slew, boom, jib, hoist): first time after
    /// which the error stays within 2% of the commanded step.
    pub settling_time: [Option<f64>; 4],
    /// Max |swing angle| over the final window, per swing axis \[rad\].
    pub residual_swing: [f64; 2],
    /// Max |input| over the run, per actuator.
    pub peak_input: [f64; 4],
    /// Lyapunov value at the last sample.
    pub final_v: f64,
    /// Tracking error at the last sample, per actuated coordinate.
    pub final_error: [f64; 4],
}

/// Compute settling times, residual swing and peak inputs for a log.
///
/// The settling band is 2% of the commanded step `|x_d - x(0)|` per
/// coordinate; a coordinate with zero commanded step settles at t = 0 only
/// if its error stays exactly zero.
pub fn metrics(log: &TrajectoryLog, sp: &Setpoint) -> MetricsReport {
    assert!(!log.rows.is_empty(), "metrics need a nonempty log");
    let targets = [sp.alpha_d, sp.beta_d, sp.gamma_d, sp.d_d];
    let first = &log.rows[0];

    let mut settling_time = [None; 4];
    for coord in 0..4 {
        let step = (targets[coord] - first.q[coord]).abs();
        let band = SETTLING_BAND * step;
        // walk backwards: find the last sample outside the band
        let mut settle = Some(0.0);
        for row in log.rows.iter().rev() {
            if (targets[coord] - row.q[coord]).abs() > band {
                settle = if std::ptr::eq(row, log.last()) {
                    None // still outside at the end: never settles
                } else {
                    Some(row.t + log.dt)
                };
                break;
            }
        }
        settling_time[coord] = settle;
    }

    let window_start = log.last().t - RESIDUAL_WINDOW * (log.last().t - first.t);
    let mut residual_swing = [0.0_f64; 2];
    for row in log.rows.iter().filter(|r| r.t >= window_start) {
        residual_swing[0] = residual_swing[0].max(row.q[4].abs());
        residual_swing[1] = residual_swing[1].max(row.q[5].abs());
    }

    let mut peak_input = [0.0_f64; 4];
    for row in &log.rows {
        for (peak, u) in peak_input.iter_mut().zip(&row.u) {
            *peak = peak.max(u.abs());
        }
    }

    let last = log.last();
    let final_error = [
        targets[0] - last.q[0],
        targets[1] - last.q[1],
        targets[2] - last.q[2],
        targets[3] - last.q[3],
    ];

    MetricsReport {
        settling_time,
        residual_swing,
        peak_input,
        final_v: last.lyapunov,
        final_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::LogRow;

    fn row(t: f64, q: [f64; 6], u: [f64; 4]) -> LogRow {
        LogRow {
            t,
            q,
            qdot: [0.0; 6],
            u,
            energy: 0.0,
            lyapunov: 0.0,
        }
    }

    #[test]
    fn constant_log_at_setpoint_settles_immediately() {
        let sp = Setpoint::new(0.5, 0.3, 0.2, 2.0);
        let q = [0.5, 0.3, 0.2, 2.0, 0.0, 0.0];
        let log = TrajectoryLog {
            dt: 0.1,
            rows: (0..11).map(|i| row(i as f64 * 0.1, q, [0.0; 4])).collect(),
        };
        let m = metrics(&log, &sp);
        assert_eq!(m.settling_time, [Some(0.0); 4]);
        assert_eq!(m.residual_swing, [0.0, 0.0]);
        assert_eq!(m.peak_input, [0.0; 4]);
    }

    #[test]
    fn late_excursion_marks_did_not_settle() {
        let sp = Setpoint::new(1.0, 0.0, 0.0, 2.0);
        let mut rows = vec![];
        for i in 0..10 {
            let t = i as f64 * 0.1;
            // slew approaches 1.0 then leaves the band on the last sample
            let alpha = if i < 9 {
                1.0 - 0.001 * (9 - i) as f64
            } else {
                0.5
            };
            rows.push(row(t, [alpha, 0.0, 0.0, 2.0, 0.0, 0.0], [0.0; 4]));
        }
        let log = TrajectoryLog { dt: 0.1, rows };
        let m = metrics(&log, &sp);
        assert_eq!(m.settling_time[0], None);
    }

    #[test]
    fn settling_is_the_last_band_exit() {
        let sp = Setpoint::new(1.0, 0.0, 0.0, 2.0);
        // step = 1.0 from alpha(0) = 0, band = 0.02
        let alphas = [0.0, 0.5, 0.9, 1.1, 0.995, 0.99, 1.0, 1.0, 1.0, 1.0];
        let rows: Vec<_> = alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                row(
                    i as f64 * 0.1,
                    [a, 0.0, 0.0, 2.0, 0.0, 0.0],
                    [1.0, -2.0, 0.5, 0.0],
                )
            })
            .collect();
        let log = TrajectoryLog { dt: 0.1, rows };
        let m = metrics(&log, &sp);
        // last outside sample is t = 0.3 (alpha = 1.1), so settling at 0.4
        assert!((m.settling_time[0].unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(m.peak_input[1], 2.0);
    }
}
