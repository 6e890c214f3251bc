//! Coefficient families of the one-step second-derivative integrators.
//!
//! Every integrator in the catalog discretizes `x' = f(t, x, u)` as
//!
//! ```text
//! x(t) = a_prev x(t-h) + b_now x'(t) + b_prev x'(t-h) + c_now x''(t) + c_prev x''(t-h)
//! ```
//!
//! and differs only in the five coefficients. Kinds A and B are tuned so the
//! discretization error vanishes at a chosen angular frequency `omega_select`;
//! C and D are the classical Obreshkov/Taylor members; TR and BE are the
//! trapezoidal and backward Euler baselines.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `omega_select * h` the frequency-tuned coefficients are
/// evaluated from truncated series instead of the closed forms.
pub const SERIES_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntegratorKind {
    A,
    B,
    C,
    D,
    #[serde(rename = "TR")]
    Tr,
    #[serde(rename = "BE")]
    Be,
}

impl IntegratorKind {
    pub const ALL: [IntegratorKind; 6] = [
        IntegratorKind::A,
        IntegratorKind::B,
        IntegratorKind::C,
        IntegratorKind::D,
        IntegratorKind::Tr,
        IntegratorKind::Be,
    ];

    /// Whether the coefficients depend on `omega_select`.
    pub fn is_frequency_tuned(self) -> bool {
        matches!(self, IntegratorKind::A | IntegratorKind::B)
    }

    /// Kinds with `b_prev = c_prev = 0`; they use no derivative history and
    /// can restart cleanly after a discontinuity.
    pub fn is_history_free(self) -> bool {
        matches!(self, IntegratorKind::B | IntegratorKind::D | IntegratorKind::Be)
    }

    /// Upper (exclusive) step-size bound for the given `omega_select`, if any.
    pub fn step_bound(self, omega_select: f64) -> Option<f64> {
        match self {
            IntegratorKind::A => Some(2.0 * PI / omega_select),
            IntegratorKind::B => Some(PI / omega_select),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            IntegratorKind::A => "A",
            IntegratorKind::B => "B",
            IntegratorKind::C => "C",
            IntegratorKind::D => "D",
            IntegratorKind::Tr => "TR",
            IntegratorKind::Be => "BE",
        }
    }
}

impl fmt::Display for IntegratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IntegratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(IntegratorKind::A),
            "B" => Ok(IntegratorKind::B),
            "C" => Ok(IntegratorKind::C),
            "D" => Ok(IntegratorKind::D),
            "TR" => Ok(IntegratorKind::Tr),
            "BE" => Ok(IntegratorKind::Be),
            other => Err(Error::InvalidArgument(format!(
                "unknown integrator '{other}' (expected A, B, C, D, TR or BE)"
            ))),
        }
    }
}

/// The five discretization coefficients together with the step size and
/// the family they were built for.
///
/// Only [`build_coefficients`] creates values of this type, so the
/// kind-specific invariants hold for every instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSet {
    a_prev: f64,
    b_now: f64,
    b_prev: f64,
    c_now: f64,
    c_prev: f64,
    h: f64,
    kind: IntegratorKind,
    omega_select: f64,
}

impl CoefficientSet {
    /// Dimensionless weight of `x(t-h)`.
    pub fn a_prev(&self) -> f64 {
        self.a_prev
    }
    /// Weight of `x'(t)`, seconds.
    pub fn b_now(&self) -> f64 {
        self.b_now
    }
    /// Weight of `x'(t-h)`, seconds.
    pub fn b_prev(&self) -> f64 {
        self.b_prev
    }
    /// Weight of `x''(t)`, seconds squared.
    pub fn c_now(&self) -> f64 {
        self.c_now
    }
    /// Weight of `x''(t-h)`, seconds squared.
    pub fn c_prev(&self) -> f64 {
        self.c_prev
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    pub fn kind(&self) -> IntegratorKind {
        self.kind
    }
    /// Tuning frequency in rad/s; 0 for kinds that ignore it.
    pub fn omega_select(&self) -> f64 {
        self.omega_select
    }
    /// Dimensionless `omega_select * h`.
    pub fn theta(&self) -> f64 {
        self.omega_select * self.h
    }

    /// Coefficients scaled by powers of `h`: `[a_prev, b_now/h, b_prev/h, c_now/h^2, c_prev/h^2]`.
    pub fn normalized(&self) -> [f64; 5] {
        let h2 = self.h * self.h;
        [
            self.a_prev,
            self.b_now / self.h,
            self.b_prev / self.h,
            self.c_now / h2,
            self.c_prev / h2,
        ]
    }
}

/// Outcome of [`validate_step_size`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepVerdict {
    Valid,
    /// `h` is at or beyond the exclusive bound.
    TooLarge {
        bound: f64,
    },
    NonPositive,
}

impl StepVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, StepVerdict::Valid)
    }
}

/// Checks the stability precondition on the step size: `h < 2*pi/omega_select`
/// for kind A, `h < pi/omega_select` for kind B, unrestricted otherwise.
pub fn validate_step_size(kind: IntegratorKind, omega_select: f64, h: f64) -> StepVerdict {
    if !(h > 0.0) || !h.is_finite() {
        return StepVerdict::NonPositive;
    }
    match kind.step_bound(omega_select) {
        Some(bound) if !(h < bound) => StepVerdict::TooLarge { bound },
        _ => StepVerdict::Valid,
    }
}

pub fn build_coefficients(kind: IntegratorKind, omega_select: f64, h: f64) -> Result<CoefficientSet> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::NonPositiveStep(h));
    }
    if kind.is_frequency_tuned() && (!(omega_select > 0.0) || !omega_select.is_finite()) {
        return Err(Error::NonPositiveOmega {
            kind,
            omega: omega_select,
        });
    }
    if let StepVerdict::TooLarge { bound } = validate_step_size(kind, omega_select, h) {
        return Err(Error::StepBound { kind, h, bound });
    }

    let h2 = h * h;
    let (b_now, b_prev, c_now, c_prev) = match kind {
        IntegratorKind::A => {
            let c_prev = tuned_trapezoid_c_prev(omega_select, h);
            (h / 2.0, h / 2.0, -c_prev, c_prev)
        }
        IntegratorKind::B => {
            let (b_now, c_now) = tuned_taylor_b_c(omega_select, h);
            (b_now, 0.0, c_now, 0.0)
        }
        IntegratorKind::C => (h / 2.0, h / 2.0, -h2 / 12.0, h2 / 12.0),
        IntegratorKind::D => (h, 0.0, -h2 / 2.0, 0.0),
        IntegratorKind::Tr => (h / 2.0, h / 2.0, 0.0, 0.0),
        IntegratorKind::Be => (h, 0.0, 0.0, 0.0),
    };

    let set = CoefficientSet {
        a_prev: 1.0,
        b_now,
        b_prev,
        c_now,
        c_prev,
        h,
        kind,
        omega_select: if kind.is_frequency_tuned() { omega_select } else { 0.0 },
    };
    if set.normalized().iter().any(|v| !v.is_finite()) {
        // Only reachable when h sits within rounding of the bound.
        let bound = kind.step_bound(omega_select).unwrap_or(f64::INFINITY);
        return Err(Error::StepBound { kind, h, bound });
    }
    Ok(set)
}

/// `c_prev = 1/w^2 - h/(2w) * cot(w h / 2)` for kind A.
fn tuned_trapezoid_c_prev(omega: f64, h: f64) -> f64 {
    let theta = omega * h;
    if theta < SERIES_THRESHOLD {
        // 1 - x cot x = x^2/3 + x^4/45 + 2x^6/945 + x^8/4725 with x = theta/2
        let x2 = 0.25 * theta * theta;
        h * h / 12.0 * (1.0 + x2 * (1.0 / 15.0 + x2 * (2.0 / 315.0 + x2 / 1575.0)))
    } else {
        let half = 0.5 * theta;
        (1.0 - half / half.tan()) / (omega * omega)
    }
}

/// `(b_now, c_now) = (sin(w h)/w, (cos(w h) - 1)/w^2)` for kind B.
fn tuned_taylor_b_c(omega: f64, h: f64) -> (f64, f64) {
    let theta = omega * h;
    if theta < SERIES_THRESHOLD {
        let t2 = theta * theta;
        let sinc = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
        let versc = 0.5 - t2 / 24.0 * (1.0 - t2 / 30.0 * (1.0 - t2 / 56.0));
        (h * sinc, -h * h * versc)
    } else {
        (theta.sin() / omega, (theta.cos() - 1.0) / (omega * omega))
    }
}
