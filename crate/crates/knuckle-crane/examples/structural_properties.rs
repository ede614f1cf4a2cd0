//! Run the structural property suite: skew symmetry of `1/2 Mdot - C`,
//! gravity as the potential gradient, matrix vs scalar equations of
//! motion, inertia positive definiteness, the energy rate identity, and
//! the two kinetic-energy code paths.
//!
//!     cargo run --release --example structural_properties

use knuckle_crane::verify::run_property_suite;
use knuckle_crane::CraneParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_property_suite(&CraneParams::reference(), 1000, 2024)?;
    print!("{report}");
    if !report.all_passed() {
        std::process::exit(3);
    }
    Ok(())
}
