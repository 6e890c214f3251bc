//! Coarse text rendering of |g| over lambda*h for kinds B and C.
//! '.' stable, '=' marginal, '#' growing, 'x' pole.

use std::f64::consts::PI;

use froi::stability::{stability_map, CellClass};
use froi::{build_coefficients, IntegratorKind};

fn main() -> froi::Result<()> {
    for (kind, re, im) in [
        (IntegratorKind::C, (-8.0, 2.0), (-5.0, 5.0)),
        (IntegratorKind::B, (-0.05, 0.01), (-2.0, 2.0)),
    ] {
        let c = build_coefficients(kind, 120.0 * PI, 2e-3)?;
        let map = stability_map(&c, re, im, 21)?;
        println!(
            "kind {kind}, theta = {:.3}, Re(mu) {re:?} down, Im(mu) {im:?} across",
            map.theta
        );
        for row in &map.magnitude {
            let line: String = row
                .iter()
                .map(|&m| match CellClass::of(m) {
                    CellClass::Stable => '.',
                    CellClass::Marginal => '=',
                    CellClass::Unstable => '#',
                    CellClass::Pole => 'x',
                })
                .collect();
            println!("  {line}");
        }
        println!("  max |g| = {:.4}\n", map.max_magnitude());
    }
    Ok(())
}
