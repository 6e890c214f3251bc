//! Checks that the zeros of E(s) sit where each integrator was designed to put
//! them, with the designed multiplicity.

use std::f64::consts::PI;

use froi::freq::verify_root_design;
use froi::{build_coefficients, IntegratorKind};

fn main() -> froi::Result<()> {
    let h = 1e-3;
    for kind in IntegratorKind::ALL {
        let c = build_coefficients(kind, 120.0 * PI, h)?;
        for report in verify_root_design(kind, &c, 1e-9) {
            let mags: Vec<String> = report
                .derivative_magnitudes
                .iter()
                .map(|m| format!("{m:.1e}"))
                .collect();
            println!(
                "{:>2} root at {:>8.2}j x{}  |E^(k)| = [{}]  {}",
                kind.label(),
                report.location.im,
                report.claimed_multiplicity,
                mags.join(", "),
                if report.passed() { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
