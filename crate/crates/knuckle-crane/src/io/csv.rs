//! Trajectory CSV export and parsing.
//!
//! Values are written in Rust's shortest round-trip decimal form, so
//! parsing an emitted file recovers every f64 bit-exactly, and two runs
//! with identical configurations produce byte-identical files.

use std::io::{self, BufRead, Write};

use crate::error::{CraneError, Result};
use crate::sim::{LogRow, TrajectoryLog};

pub const CSV_HEADER: &str = "t,alpha,beta,gamma,d,theta1,theta2,\
alpha_dot,beta_dot,gamma_dot,d_dot,theta1_dot,theta2_dot,u1,u2,u3,u4,E,V";

/// Write a trajectory log as CSV (angles in radians, full precision).
pub fn write_csv<W: Write>(mut w: W, log: &TrajectoryLog) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in &log.rows {
        write!(w, "{}", r.t)?;
        for v in r.q {
            write!(w, ",{v}")?;
        }
        for v in r.qdot {
            write!(w, ",{v}")?;
        }
        for v in r.u {
            write!(w, ",{v}")?;
        }
        writeln!(w, ",{},{}", r.energy, r.lyapunov)?;
    }
    Ok(())
}

/// Render a log to an in-memory CSV byte buffer.
pub fn csv_bytes(log: &TrajectoryLog) -> Vec<u8> {
    let mut buf = Vec::with_capacity(64 * (log.rows.len() + 1));
    write_csv(&mut buf, log).expect("writing to a Vec cannot fail");
    buf
}

/// Parse a CSV emitted by [`write_csv`] back into a trajectory log.
pub fn parse_csv<R: BufRead>(r: R) -> Result<TrajectoryLog> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| CraneError::Config("empty CSV".into()))??;
    if header.trim() != CSV_HEADER {
        return Err(CraneError::Config(format!(
            "unexpected CSV header: {header}"
        )));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 19 {
            return Err(CraneError::Config(format!(
                "row {}: expected 19 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|e| CraneError::Config(format!("row {}: {e}: {s:?}", lineno + 2)))
        };
        let mut vals = [0.0; 19];
        for (i, f) in fields.iter().enumerate() {
            vals[i] = parse(f)?;
        }
        rows.push(LogRow {
            t: vals[0],
            q: vals[1..7].try_into().unwrap(),
            qdot: vals[7..13].try_into().unwrap(),
            u: vals[13..17].try_into().unwrap(),
            energy: vals[17],
            lyapunov: vals[18],
        });
    }
    if rows.is_empty() {
        return Err(CraneError::Config("CSV has no data rows".into()));
    }
    let dt = if rows.len() > 1 {
        rows[1].t - rows[0].t
    } else {
        0.0
    };
    Ok(TrajectoryLog { dt, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_log() -> TrajectoryLog {
        // awkward values: subnormal-ish fractions, negatives, many digits
        let mut rows = Vec::new();
        for i in 0..5 {
            let t = i as f64 * 0.001;
            rows.push(LogRow {
                t,
                q: [
                    0.1 + t,
                    -0.3333333333333333,
                    1.0471975511965976,
                    2.0 + 1e-13 * i as f64,
                    -1e-17,
                    0.2,
                ],
                qdot: [0.0, 1.5e-8, -2.25, 0.1, 0.0, 3.0_f64.sqrt()],
                u: [9810.000000000001, -981.0, 0.0, 17.25],
                energy: 3781.2641953841365,
                lyapunov: 11.578055,
            });
        }
        TrajectoryLog { dt: 0.001, rows }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let log = small_log();
        let bytes = csv_bytes(&log);
        let back = parse_csv(&bytes[..]).unwrap();
        assert_eq!(back.rows.len(), log.rows.len());
        for (a, b) in log.rows.iter().zip(&back.rows) {
            assert_eq!(a, b, "row mismatch");
        }
        // and re-serialization is byte-identical
        assert_eq!(bytes, csv_bytes(&back));
    }

    #[test]
    fn rejects_foreign_header_and_short_rows() {
        assert!(parse_csv(&b"time,x\n1,2\n"[..]).is_err());
        let mut bytes = csv_bytes(&small_log());
        bytes.extend_from_slice(b"1,2,3\n");
        assert!(parse_csv(&bytes[..]).is_err());
    }
}
