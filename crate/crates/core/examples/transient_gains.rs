//! Per-step decay factor of a real transient e^{lambda t} for each integrator,
//! against the exact e^{lambda h}, with the qualitative label.

use std::f64::consts::PI;

use froi::transient::{classify_transient, positivity_certificate, transient_gain};
use froi::{build_coefficients, IntegratorKind};

fn main() -> froi::Result<()> {
    let h = 2e-3;
    for mu in [-0.1f64, -1.0, -10.0, -100.0, -1e4] {
        let lambda = mu / h;
        println!("lambda h = {mu}  (exact {:.4e})", mu.exp());
        for kind in IntegratorKind::ALL {
            let c = build_coefficients(kind, 120.0 * PI, h)?;
            let g = transient_gain(&c, lambda)?;
            let class = classify_transient(g, lambda, h);
            println!("  {:>2} {:>11.4e}  {}", kind.label(), g, class.tag.label());
        }
    }
    println!();
    for kind in IntegratorKind::ALL {
        let cert = positivity_certificate(kind, &build_coefficients(kind, 120.0 * PI, h)?)?;
        println!(
            "{:>2} positivity certificate: applicable {}, gain in [{:.3e}, {:.3e}], pass {}",
            kind.label(),
            cert.applicable,
            cert.min_gain,
            cert.max_gain,
            cert.pass
        );
    }
    Ok(())
}
