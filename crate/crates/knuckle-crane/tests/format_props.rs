//! Property tests for the serialization surfaces.

use proptest::prelude::*;

use knuckle_crane::io::{csv_bytes, parse_csv};
use knuckle_crane::sim::{LogRow, TrajectoryLog};

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e12..1e12_f64,
        -1.0..1.0_f64,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(1e-300),
    ]
}

prop_compose! {
    fn arb_row()(
        t in 0.0..1e6_f64,
        q in prop::array::uniform6(finite()),
        qdot in prop::array::uniform6(finite()),
        u in prop::array::uniform4(finite()),
        energy in finite(),
        lyapunov in finite(),
    ) -> LogRow {
        LogRow { t, q, qdot, u, energy, lyapunov }
    }
}

proptest! {
    /// Every finite f64 written to CSV parses back to the identical bits.
    #[test]
    fn csv_round_trip_recovers_exact_values(rows in prop::collection::vec(arb_row(), 1..20)) {
        let log = TrajectoryLog { dt: 1e-3, rows };
        let bytes = csv_bytes(&log);
        let back = parse_csv(&bytes[..]).unwrap();
        prop_assert_eq!(back.rows.len(), log.rows.len());
        for (a, b) in log.rows.iter().zip(&back.rows) {
            prop_assert_eq!(a.t.to_bits(), b.t.to_bits());
            for i in 0..6 {
                prop_assert_eq!(a.q[i].to_bits(), b.q[i].to_bits());
                prop_assert_eq!(a.qdot[i].to_bits(), b.qdot[i].to_bits());
            }
            for i in 0..4 {
                prop_assert_eq!(a.u[i].to_bits(), b.u[i].to_bits());
            }
            prop_assert_eq!(a.energy.to_bits(), b.energy.to_bits());
            prop_assert_eq!(a.lyapunov.to_bits(), b.lyapunov.to_bits());
        }
        // and serialization is stable
        prop_assert_eq!(bytes, csv_bytes(&back));
    }
}
