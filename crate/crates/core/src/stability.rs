//! Amplification factor on the scalar test equation `x' = lambda x` and
//! stability maps over the dimensionless plane `mu = lambda h`.
//!
//! Any catalog integrator applied to the test equation gives
//! `x_k = g(lambda) x_{k-1}` with
//!
//! ```text
//! g = (1 + b_prev lambda + c_prev lambda^2) / (1 - b_now lambda - c_now lambda^2)
//! ```
//!
//! For kinds A and B the factor depends on `mu` and on `theta = omega_select h`
//! jointly, so a map is only reusable across time scales at fixed `theta`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrators::{CoefficientSet, IntegratorKind};

/// Upper bound on `|g|` at the largest L-stability probe for a pass.
pub const L_STABLE_TAIL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellClass {
    Stable,
    Marginal,
    Unstable,
    /// The denominator of `g` vanishes.
    Pole,
}

impl CellClass {
    pub fn of(magnitude: f64) -> CellClass {
        if magnitude.is_infinite() {
            CellClass::Pole
        } else if magnitude < 1.0 {
            CellClass::Stable
        } else if magnitude == 1.0 {
            CellClass::Marginal
        } else {
            CellClass::Unstable
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityMap {
    pub kind: IntegratorKind,
    /// `Re(lambda h)`, one entry per row.
    pub re_axis: Vec<f64>,
    /// `Im(lambda h)`, one entry per column.
    pub im_axis: Vec<f64>,
    /// `magnitude[row][col] = |g|`; `f64::INFINITY` marks a pole.
    pub magnitude: Vec<Vec<f64>>,
    pub theta: f64,
}

impl StabilityMap {
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.re_axis
            .iter()
            .zip(&self.magnitude)
            .flat_map(move |(&re, row)| self.im_axis.iter().zip(row).map(move |(&im, &m)| (re, im, m)))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.cells().map(|(_, _, m)| m).fold(0.0, f64::max)
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells().filter(|&(_, _, m)| CellClass::of(m) == class).count()
    }
}

/// Per-step amplification factor for eigenvalue `lambda` (1/s).
pub fn amplification(coeffs: &CoefficientSet, lambda: Complex64) -> Result<Complex64> {
    let l2 = lambda * lambda;
    let num = 1.0 + coeffs.b_prev() * lambda + coeffs.c_prev() * l2;
    let den = 1.0 - coeffs.b_now() * lambda - coeffs.c_now() * l2;
    let g = num / den;
    if den == Complex64::new(0.0, 0.0) || !g.re.is_finite() || !g.im.is_finite() {
        return Err(Error::SingularDenominator {
            re: lambda.re,
            im: lambda.im,
        });
    }
    Ok(g)
}

/// `|g|` over a uniform grid of `lambda h` with `n` points per axis.
///
/// Ranges are inclusive. Rows are evaluated in parallel; every cell is
/// independent so the result is the same for any number of workers.
pub fn stability_map(
    coeffs: &CoefficientSet,
    re_range: (f64, f64),
    im_range: (f64, f64),
    n: usize,
) -> Result<StabilityMap> {
    let re_axis = axis(re_range, n)?;
    let im_axis = axis(im_range, n)?;
    let h = coeffs.h();
    let magnitude = re_axis
        .par_iter()
        .map(|&re| {
            im_axis
                .iter()
                .map(|&im| {
                    amplification(coeffs, Complex64::new(re, im) / h)
                        .map(|g| g.norm())
                        .unwrap_or(f64::INFINITY)
                })
                .collect()
        })
        .collect();
    Ok(StabilityMap {
        kind: coeffs.kind(),
        re_axis,
        im_axis,
        magnitude,
        theta: coeffs.theta(),
    })
}

fn axis((lo, hi): (f64, f64), n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points per axis, got {n}")));
    }
    if !lo.is_finite() || !hi.is_finite() || !(hi > lo) {
        return Err(Error::InvalidGrid(format!("need finite lo < hi, got [{lo}, {hi}]")));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            if k == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (k as f64 / last)
            }
        })
        .collect())
}

/// True iff `lambda` lies strictly inside the left-half-plane wedge
/// `|Re| > |Im|`, where kind B is guaranteed to decay.
pub fn wedge_contains(lambda: Complex64) -> bool {
    lambda.re < 0.0 && lambda.re.abs() > lambda.im.abs()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LStabilityReport {
    /// `(lambda h, |g|)` per probe, in the order given.
    pub probes: Vec<(f64, f64)>,
    pub pass: bool,
}

/// Probes `|g|` at increasingly negative real `lambda h`.
///
/// Passes when `|g|` strictly decreases across probes and ends below
/// [`L_STABLE_TAIL`].
pub fn check_l_stability(coeffs: &CoefficientSet, probe_magnitudes: &[f64]) -> Result<LStabilityReport> {
    let h = coeffs.h();
    let probes = probe_magnitudes
        .iter()
        .map(|&p| {
            let mu = -p.abs();
            amplification(coeffs, Complex64::new(mu / h, 0.0)).map(|g| (mu, g.norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = probes.windows(2).all(|w| w[1].1 < w[0].1);
    let tail = probes.last().is_some_and(|&(_, g)| g < L_STABLE_TAIL);
    Ok(LStabilityReport {
        pass: !probes.is_empty() && decreasing && tail,
        probes,
    })
}
