//! Relative error |E(j omega)| of each integrator over 0..240 Hz at h = 2 ms.
//! The tuned kinds show a notch at 60 Hz; the classical ones grow from DC.

use std::f64::consts::PI;

use froi::freq::{magnitude_sweep, Spacing};
use froi::{build_coefficients, IntegratorKind};

fn main() -> froi::Result<()> {
    let h = 2e-3;
    let omega = 120.0 * PI;
    let hz = [10.0, 30.0, 50.0, 60.0, 70.0, 120.0, 180.0, 240.0];

    print!("{:>6}", "Hz");
    for kind in IntegratorKind::ALL {
        print!("{:>11}", kind.label());
    }
    println!();

    let sweeps = IntegratorKind::ALL
        .iter()
        .map(|&k| {
            let c = build_coefficients(k, omega, h)?;
            magnitude_sweep(&c, 2.0 * PI * 10.0, 2.0 * PI * 240.0, 24, Spacing::Linear)
        })
        .collect::<froi::Result<Vec<_>>>()?;
    for f in hz {
        print!("{f:>6}");
        for sweep in &sweeps {
            let s = sweep
                .iter()
                .min_by(|a, b| {
                    (a.omega - 2.0 * PI * f)
                        .abs()
                        .total_cmp(&(b.omega - 2.0 * PI * f).abs())
                })
                .unwrap();
            print!("{:>11.3e}", s.magnitude);
        }
        println!();
    }
    Ok(())
}
