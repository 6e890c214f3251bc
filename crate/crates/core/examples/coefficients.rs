//! Coefficient sets of every integrator at one step size, plus the step
//! bounds of the two tuned kinds.
//!
//! cargo run --example coefficients -- [h_seconds] [f_select_hz]

use std::f64::consts::PI;

use froi::{build_coefficients, validate_step_size, IntegratorKind};

fn main() -> froi::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("numeric argument"));
    let h = args.next().unwrap_or(2e-3);
    let omega = 2.0 * PI * args.next().unwrap_or(60.0);

    println!("h = {h} s, omega_select = {omega:.4} rad/s, theta = {:.4}", omega * h);
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>13} {:>13}",
        "kind", "a_prev", "b_now", "b_prev", "c_now", "c_prev"
    );
    for kind in IntegratorKind::ALL {
        let c = build_coefficients(kind, omega, h)?;
        println!(
            "{:>4} {:>12.6e} {:>12.6e} {:>12.6e} {:>13.6e} {:>13.6e}",
            kind.label(),
            c.a_prev(),
            c.b_now(),
            c.b_prev(),
            c.c_now(),
            c.c_prev()
        );
    }

    for kind in [IntegratorKind::A, IntegratorKind::B] {
        let bound = kind.step_bound(omega).expect("tuned kinds have a bound");
        println!(
            "{kind}: h < {:.4} ms; h = 10 ms is {:?}",
            bound * 1e3,
            validate_step_size(kind, omega, 0.01)
        );
    }
    Ok(())
}
