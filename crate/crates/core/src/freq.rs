//! Frequency-domain view of the discretization error.
//!
//! Laplace-transforming the discretization gives the relative error
//!
//! ```text
//! E(s) = 1 - (a_prev e^{-sh} + b_now s + b_prev s e^{-sh} + c_now s^2 + c_prev s^2 e^{-sh})
//! ```
//!
//! A root of `E` at `s = j*omega` means signals at that frequency are
//! reproduced without error; the multiplicity of the root controls how flat
//! the error stays around it.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrators::{CoefficientSet, IntegratorKind};

pub const MAX_PUBLIC_DERIVATIVE_ORDER: u32 = 4;

/// Below this `|s h|` the error and its derivatives come from the Taylor
/// series in `z = s h`. The closed form cancels terms of size 1 down to
/// `E ~ z^3 theta^2` there and loses most of its digits.
pub const TAYLOR_RADIUS: f64 = 0.5;

/// Series length; the remainder is below `1e-30` at [`TAYLOR_RADIUS`].
const TAYLOR_TERMS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorSample {
    pub omega: f64,
    pub error: Complex64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spacing {
    Linear,
    Log,
}

/// One derivative check inside a [`RootReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub order: u32,
    pub magnitude: f64,
    pub threshold: f64,
    /// For orders below the multiplicity: magnitude below threshold.
    /// For the order equal to the multiplicity: magnitude above threshold.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootReport {
    pub location: Complex64,
    pub claimed_multiplicity: u32,
    /// `|E^(k)(location)|` for `k = 0..claimed_multiplicity`.
    pub derivative_magnitudes: Vec<f64>,
    /// One entry per order `0..=claimed_multiplicity`; the last one checks
    /// that the root is not of higher multiplicity than claimed.
    pub checks: Vec<DerivativeCheck>,
}

impl RootReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn relative_error_at(coeffs: &CoefficientSet, s: Complex64) -> Complex64 {
    nth_derivative(coeffs, s, 0)
}

/// Analytic derivative of `E(s)` of order 1 through 4.
pub fn error_derivative_at(coeffs: &CoefficientSet, s: Complex64, order: u32) -> Result<Complex64> {
    if !(1..=MAX_PUBLIC_DERIVATIVE_ORDER).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(nth_derivative(coeffs, s, order))
}

/// `E^(k)(s)` for any `k`, order 0 being `E` itself.
pub(crate) fn nth_derivative(coeffs: &CoefficientSet, s: Complex64, order: u32) -> Complex64 {
    if (s * coeffs.h()).norm() <= TAYLOR_RADIUS {
        taylor(coeffs, s, order)
    } else {
        closed_form(coeffs, s, order)
    }
}

/// Writes `E = 1 - Q(s) - P(s) e^{-sh}` with `Q = b_now s + c_now s^2` and
/// `P = a_prev + b_prev s + c_prev s^2`, then applies Leibniz to `P e^{-sh}`.
fn closed_form(coeffs: &CoefficientSet, s: Complex64, order: u32) -> Complex64 {
    let h = coeffs.h();
    let decay = (-s * h).exp();
    let p = [
        coeffs.a_prev() + coeffs.b_prev() * s + coeffs.c_prev() * s * s,
        coeffs.b_prev() + 2.0 * coeffs.c_prev() * s,
        Complex64::new(2.0 * coeffs.c_prev(), 0.0),
    ];
    let q = match order {
        0 => 1.0 - coeffs.b_now() * s - coeffs.c_now() * s * s,
        1 => -(coeffs.b_now() + 2.0 * coeffs.c_now() * s),
        2 => Complex64::new(-2.0 * coeffs.c_now(), 0.0),
        _ => Complex64::new(0.0, 0.0),
    };
    let k = order as i32;
    let mut leibniz = Complex64::new(0.0, 0.0);
    for (j, pj) in p.iter().enumerate().take(order as usize + 1) {
        let j = j as i32;
        leibniz += binomial(k, j) * (-h).powi(k - j) * pj;
    }
    q - leibniz * decay
}

/// Coefficients `e_k` of `E = sum_k e_k z^k`, `z = s h`, built from the
/// normalized coefficients so that the designed cancellations at low order
/// happen between exactly representable numbers.
fn taylor_coefficients(coeffs: &CoefficientSet) -> [f64; TAYLOR_TERMS] {
    let [a, b0, b1, c0, c1] = coeffs.normalized();
    // neg_exp[k] = (-1)^k / k!, the coefficients of e^{-z}
    let mut neg_exp = [0.0; TAYLOR_TERMS];
    neg_exp[0] = 1.0;
    for k in 1..TAYLOR_TERMS {
        neg_exp[k] = -neg_exp[k - 1] / k as f64;
    }
    let mut e = [0.0; TAYLOR_TERMS];
    for k in 0..TAYLOR_TERMS {
        let mut v = -a * neg_exp[k];
        if k >= 1 {
            v -= b1 * neg_exp[k - 1];
        }
        if k >= 2 {
            v -= c1 * neg_exp[k - 2];
        }
        e[k] = match k {
            0 => 1.0 + v,
            1 => v - b0,
            2 => v - c0,
            _ => v,
        };
    }
    e
}

/// `E^(m)(s) = h^m sum_{k >= m} e_k k!/(k-m)! z^(k-m)`.
fn taylor(coeffs: &CoefficientSet, s: Complex64, order: u32) -> Complex64 {
    let m = order as usize;
    if m >= TAYLOR_TERMS {
        return Complex64::new(0.0, 0.0);
    }
    let e = taylor_coefficients(coeffs);
    let z = s * coeffs.h();
    // Horner from the top term down.
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (m..TAYLOR_TERMS).rev() {
        let falling = ((k - m + 1)..=k).fold(1.0, |f, i| f * i as f64);
        acc = acc * z + e[k] * falling;
    }
    acc * coeffs.h().powi(order as i32)
}

fn binomial(n: i32, k: i32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Samples `E(j*omega)` on a linear or logarithmic grid.
///
/// A log grid needs `omega_min > 0`. Samples are computed in parallel; each
/// one depends only on its index, so the output does not depend on the
/// number of worker threads.
pub fn magnitude_sweep(
    coeffs: &CoefficientSet,
    omega_min: f64,
    omega_max: f64,
    n_points: usize,
    spacing: Spacing,
) -> Result<Vec<ErrorSample>> {
    let grid = frequency_grid(omega_min, omega_max, n_points, spacing)?;
    Ok(grid
        .into_par_iter()
        .map(|omega| {
            let error = relative_error_at(coeffs, Complex64::new(0.0, omega));
            ErrorSample {
                omega,
                error,
                magnitude: error.norm(),
            }
        })
        .collect())
}

/// Default sweep range: `[0, 2*omega_select]` for tuned kinds, `[0, 2*pi/h]` otherwise.
pub fn default_sweep_range(coeffs: &CoefficientSet) -> (f64, f64) {
    if coeffs.omega_select() > 0.0 {
        (0.0, 2.0 * coeffs.omega_select())
    } else {
        (0.0, 2.0 * std::f64::consts::PI / coeffs.h())
    }
}

pub const DEFAULT_SWEEP_POINTS: usize = 2001;

pub(crate) fn frequency_grid(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
    }
    if !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "need 0 <= omega_min < omega_max, got [{lo}, {hi}]"
        )));
    }
    let last = (n - 1) as f64;
    Ok(match spacing {
        Spacing::Linear => (0..n)
            .map(|k| {
                if k == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * (k as f64 / last)
                }
            })
            .collect(),
        Spacing::Log => {
            if lo == 0.0 {
                return Err(Error::InvalidGrid("log spacing needs omega_min > 0".into()));
            }
            let (l0, l1) = (lo.ln(), hi.ln());
            (0..n)
                .map(|k| match k {
                    0 => lo,
                    k if k == n - 1 => hi,
                    k => (l0 + (l1 - l0) * (k as f64 / last)).exp(),
                })
                .collect()
        }
    })
}

/// Root locations and multiplicities each family is designed to have.
pub fn designed_roots(kind: IntegratorKind, omega_select: f64) -> Vec<(Complex64, u32)> {
    let zero = Complex64::new(0.0, 0.0);
    let pair = |m: u32| {
        vec![
            (Complex64::new(0.0, omega_select), m),
            (Complex64::new(0.0, -omega_select), m),
        ]
    };
    match kind {
        IntegratorKind::A => {
            let mut roots = pair(1);
            roots.push((zero, 3));
            roots
        }
        IntegratorKind::B => {
            let mut roots = pair(1);
            roots.push((zero, 1));
            roots
        }
        IntegratorKind::C => vec![(zero, 5)],
        IntegratorKind::D | IntegratorKind::Tr => vec![(zero, 3)],
        IntegratorKind::Be => vec![(zero, 2)],
    }
}

/// Checks that `E` has exactly the designed root multiplicities.
///
/// The order-`k` derivative carries units of `s^k`, so it is compared
/// against `tolerance * h^k * (1 + sum of |normalized coefficients|)`.
/// Orders below the multiplicity must fall under that threshold and the
/// order equal to the multiplicity must exceed it.
pub fn verify_root_design(kind: IntegratorKind, coeffs: &CoefficientSet, tolerance: f64) -> Vec<RootReport> {
    let scale = 1.0 + coeffs.normalized().iter().map(|c| c.abs()).sum::<f64>();
    designed_roots(kind, coeffs.omega_select())
        .into_iter()
        .map(|(location, multiplicity)| {
            let checks: Vec<DerivativeCheck> = (0..=multiplicity)
                .map(|order| {
                    let magnitude = nth_derivative(coeffs, location, order).norm();
                    let threshold = tolerance * coeffs.h().powi(order as i32) * scale;
                    let pass = if order < multiplicity {
                        magnitude < threshold
                    } else {
                        magnitude > threshold
                    };
                    DerivativeCheck {
                        order,
                        magnitude,
                        threshold,
                        pass,
                    }
                })
                .collect();
            RootReport {
                location,
                claimed_multiplicity: multiplicity,
                derivative_magnitudes: checks[..multiplicity as usize].iter().map(|c| c.magnitude).collect(),
                checks,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrators::build_coefficients;
    use std::f64::consts::PI;

    const W60: f64 = 120.0 * PI;

    fn j(omega: f64) -> Complex64 {
        Complex64::new(0.0, omega)
    }

    #[test]
    fn zero_frequency_is_exact_for_every_kind() {
        for kind in IntegratorKind::ALL {
            let c = build_coefficients(kind, W60, 1e-3).unwrap();
            assert_eq!(
                relative_error_at(&c, Complex64::new(0.0, 0.0)),
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn tuned_kinds_vanish_at_omega_select() {
        for kind in [IntegratorKind::A, IntegratorKind::B] {
            for h in [0.5e-3, 2e-3, 4e-3] {
                let c = build_coefficients(kind, W60, h).unwrap();
                assert!(relative_error_at(&c, j(W60)).norm() < 1e-12);
                assert!(relative_error_at(&c, j(-W60)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn kind_c_misses_sixty_hz() {
        let c = build_coefficients(IntegratorKind::C, 0.0, 2e-3).unwrap();
        let e = relative_error_at(&c, j(W60)).norm();
        // mpmath: 3.3501118693320579e-4
        assert!((e - 3.350_111_869_332_058e-4).abs() < 1e-12);
        assert!(e > 1e-6);
    }

    #[test]
    fn derivative_order_guard() {
        let c = build_coefficients(IntegratorKind::C, 0.0, 1e-3).unwrap();
        let s = Complex64::new(0.0, 0.0);
        assert!(matches!(error_derivative_at(&c, s, 0), Err(Error::UnsupportedOrder(0))));
        assert!(matches!(error_derivative_at(&c, s, 5), Err(Error::UnsupportedOrder(5))));
        assert!(error_derivative_at(&c, s, 4).is_ok());
    }

    #[test]
    fn quintuple_and_triple_roots_at_zero() {
        let h = 1e-3;
        let zero = Complex64::new(0.0, 0.0);
        let c = build_coefficients(IntegratorKind::C, 0.0, h).unwrap();
        for order in 1..=4 {
            let d = error_derivative_at(&c, zero, order).unwrap().norm();
            assert!(d < 1e-12 * h.powi(order as i32), "order {order}: {d}");
        }
        let d = build_coefficients(IntegratorKind::D, 0.0, h).unwrap();
        assert!(error_derivative_at(&d, zero, 2).unwrap().norm() < 1e-12 * h * h);
        // E = (sh)^3/6 + ..., so E''' = h^3
        let d3 = error_derivative_at(&d, zero, 3).unwrap();
        assert!((d3.re - h.powi(3)).abs() < 1e-12 * h.powi(3));
    }

    #[test]
    fn backward_euler_has_double_root() {
        // Finite-difference oracle: E(s) ~ k s^2 near 0 with k = -h^2/2.
        let h = 1e-3;
        let c = build_coefficients(IntegratorKind::Be, 0.0, h).unwrap();
        let eps = 1e-2 / h;
        let e_plus = relative_error_at(&c, Complex64::new(eps, 0.0)).re;
        let e_minus = relative_error_at(&c, Complex64::new(-eps, 0.0)).re;
        let second = (e_plus + e_minus) / (eps * eps);
        assert!((second + h * h).abs() < 1e-3 * h * h);
        let reports = verify_root_design(IntegratorKind::Be, &c, 1e-9);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].claimed_multiplicity, 2);
        assert!(reports[0].passed(), "{reports:?}");
    }

    #[test]
    fn trapezoid_has_triple_root() {
        // Finite-difference oracle on the real axis: E(x) ~ -x^3 h^3/12.
        let h = 2e-3;
        let c = build_coefficients(IntegratorKind::Tr, 0.0, h).unwrap();
        let x = 1e-2 / h;
        let e = |v: f64| relative_error_at(&c, Complex64::new(v, 0.0)).re;
        let third = (e(2.0 * x) - 2.0 * e(x) + 2.0 * e(-x) - e(-2.0 * x)) / (2.0 * x.powi(3));
        assert!((third + 0.5 * h.powi(3)).abs() < 1e-3 * h.powi(3));
        let first = (e(x) - e(-x)) / (2.0 * x);
        // (e(x) - e(-x)) / 2x ~ -(x h)^2 h / 12, far below h itself
        assert!(first.abs() < 1e-4 * h);
        assert!(verify_root_design(IntegratorKind::Tr, &c, 1e-9)
            .iter()
            .all(RootReport::passed));
    }

    #[test]
    fn root_design_for_all_kinds() {
        let h = 1e-3;
        for kind in IntegratorKind::ALL {
            let c = build_coefficients(kind, W60, h).unwrap();
            let reports = verify_root_design(kind, &c, 1e-9);
            for r in &reports {
                assert_eq!(r.derivative_magnitudes.len(), r.claimed_multiplicity as usize);
                assert!(r.passed(), "{kind}: {r:?}");
            }
        }
    }

    #[test]
    fn root_design_detects_wrong_claims() {
        // Kind D coefficients checked against the quintuple claim of C fail.
        let d = build_coefficients(IntegratorKind::D, 0.0, 1e-3).unwrap();
        assert!(!verify_root_design(IntegratorKind::C, &d, 1e-9)[0].passed());
    }

    #[test]
    fn sweep_grid_shapes() {
        let c = build_coefficients(IntegratorKind::A, W60, 1e-3).unwrap();
        let two = magnitude_sweep(&c, 0.0, 10.0, 2, Spacing::Linear).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].magnitude, 0.0);
        assert_eq!(two[1].omega, 10.0);
        assert!(magnitude_sweep(&c, 0.0, 10.0, 1, Spacing::Linear).is_err());
        assert!(magnitude_sweep(&c, 5.0, 5.0, 4, Spacing::Linear).is_err());
        assert!(magnitude_sweep(&c, -1.0, 5.0, 4, Spacing::Linear).is_err());
        assert!(magnitude_sweep(&c, 0.0, 5.0, 4, Spacing::Log).is_err());
        let log = magnitude_sweep(&c, 1.0, 1e4, 5, Spacing::Log).unwrap();
        assert!(log.windows(2).all(|w| w[0].omega < w[1].omega));
        assert!((log[2].omega - 100.0).abs() < 1e-9);
    }

    #[test]
    fn sweep_notches_for_tuned_kinds() {
        for kind in [IntegratorKind::A, IntegratorKind::B] {
            for h in [0.5e-3, 1e-3, 2e-3] {
                let c = build_coefficients(kind, W60, h).unwrap();
                let sweep = magnitude_sweep(&c, 0.0, 2.0 * W60, DEFAULT_SWEEP_POINTS, Spacing::Linear).unwrap();
                assert_eq!(sweep[1000].omega, W60);
                assert!(sweep[1000].magnitude < 1e-12);
                assert_eq!(sweep[0].magnitude, 0.0);
                // Away from the two notches the error is visibly non-zero.
                let others = sweep
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (100..1900).contains(i) && *i != 1000)
                    .map(|(_, s)| s.magnitude)
                    .fold(f64::INFINITY, f64::min);
                assert!(others > 1e-12, "{kind} h={h}: {others}");
            }
        }
    }

    #[test]
    fn series_and_closed_form_agree_at_the_switch() {
        // At |z| = TAYLOR_RADIUS the closed form is still well conditioned.
        for kind in IntegratorKind::ALL {
            let c = build_coefficients(kind, W60, 2e-3).unwrap();
            for arg in [0.6, 1.6, 2.5, 3.1] {
                let s = Complex64::from_polar(TAYLOR_RADIUS / c.h(), arg);
                for order in 0..=5 {
                    let series = taylor(&c, s, order);
                    let closed = closed_form(&c, s, order);
                    assert!(
                        (series - closed).norm() <= 1e-7 * series.norm(),
                        "{kind} arg {arg} order {order}: {series} vs {closed}"
                    );
                }
            }
        }
    }
}
