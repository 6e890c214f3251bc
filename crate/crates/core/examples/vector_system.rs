//! A two-mass system driven at 60 Hz, stepped with a factorization reused
//! across steps, checked against a fine-step reference.

use std::f64::consts::PI;

use froi::simulate::{simulate, LinearSystem, Signal};
use froi::IntegratorKind;
use nalgebra::{DMatrix, DVector};

fn main() -> froi::Result<()> {
    let w = 120.0 * PI;
    // Positions and velocities of two coupled damped oscillators.
    let (k1, k2, c) = (4.0e4, 1.0e4, 20.0);
    #[rustfmt::skip]
    let a = DMatrix::from_row_slice(4, 4, &[
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        -(k1 + k2), k2, -c, 0.0,
        k2, -k2, 0.0, -c,
    ]);
    let b = DMatrix::from_row_slice(4, 1, &[0.0, 0.0, 1.0, 0.0]);
    let system = LinearSystem::new(
        a,
        b,
        Signal::scalar(move |t| (w * t).sin()),
        Signal::scalar(move |t| w * (w * t).cos()),
    )?;
    let x0 = DVector::zeros(4);
    let t_end = 0.5;

    let reference = simulate(&system, IntegratorKind::C, 0.0, 1e-6, t_end, &x0, None)?;
    let exact = reference.values.last().unwrap();
    for kind in IntegratorKind::ALL {
        let trace = simulate(&system, kind, w, 1e-3, t_end, &x0, None)?;
        let end = trace.values.last().unwrap();
        println!(
            "{:>2}: |x(0.5 s) - reference| / |reference| = {:.3e}",
            kind.label(),
            (end - exact).norm() / exact.norm()
        );
    }
    Ok(())
}
