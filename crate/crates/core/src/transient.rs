//! Transient performance: how the amplification factor behaves for fast,
//! monotonically decaying modes (large negative real eigenvalues).
//!
//! A negative gain means the numerical solution flips sign every step
//! (numerical oscillation). A gain near 1 means the mode lingers far longer
//! than it should. Neither tracks a fast transient.
//!
//! The classification thresholds here have no canonical source; they are
//! diagnostic metadata and never feed back into simulation results.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrators::{CoefficientSet, IntegratorKind};

/// Floor of the "sluggish" threshold: a gain of at least this value removes
/// less than one decade of a fast mode per step.
pub const SLUGGISH_FLOOR: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransientTag {
    Oscillatory,
    Sluggish,
    FastDecay,
}

impl TransientTag {
    pub fn label(self) -> &'static str {
        match self {
            TransientTag::Oscillatory => "oscillatory",
            TransientTag::Sluggish => "sluggish",
            TransientTag::FastDecay => "fast_decay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransientClass {
    pub tag: TransientTag,
    pub gain: f64,
    /// `exp(lambda h)`, the factor the exact solution applies per step.
    pub exact_gain: f64,
    pub threshold: f64,
}

/// `max(10 exp(lambda h), SLUGGISH_FLOOR)`.
pub fn sluggish_threshold(lambda_h: f64) -> f64 {
    (10.0 * lambda_h.exp()).max(SLUGGISH_FLOOR)
}

/// Real amplification factor for a real, negative `lambda` (1/s).
pub fn transient_gain(coeffs: &CoefficientSet, lambda: f64) -> Result<f64> {
    if !(lambda < 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "transient gain needs a finite negative lambda, got {lambda}"
        )));
    }
    let num = 1.0 + lambda * (coeffs.b_prev() + coeffs.c_prev() * lambda);
    let den = 1.0 - lambda * (coeffs.b_now() + coeffs.c_now() * lambda);
    let gain = num / den;
    if den == 0.0 || !gain.is_finite() {
        return Err(Error::SingularDenominator { re: lambda, im: 0.0 });
    }
    Ok(gain)
}

pub fn classify_transient(gain: f64, lambda: f64, h: f64) -> TransientClass {
    let lambda_h = lambda * h;
    let threshold = sluggish_threshold(lambda_h);
    let tag = if gain < 0.0 {
        TransientTag::Oscillatory
    } else if gain >= threshold {
        TransientTag::Sluggish
    } else {
        TransientTag::FastDecay
    };
    TransientClass {
        tag,
        gain,
        exact_gain: lambda_h.exp(),
        threshold,
    }
}

/// Numerical evidence that an integrator never induces numerical oscillation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityCertificate {
    pub kind: IntegratorKind,
    /// False for TR and BE, which carry no such guarantee.
    pub applicable: bool,
    /// `b_prev^2 - 4 c_prev` of the numerator quadratic (kinds A and C).
    pub discriminant: Option<f64>,
    /// `b_prev = c_prev = 0` (kinds B and D).
    pub numerator_is_one: bool,
    pub min_gain: f64,
    pub max_gain: f64,
    pub samples: usize,
    pub pass: bool,
}

/// Default `|lambda h|` sampling for certificates: 10^-3 .. 10^6, 10 per decade.
pub fn default_lambda_h_grid() -> Vec<f64> {
    (0..=90).map(|k| -(10f64).powf(-3.0 + k as f64 / 10.0)).collect()
}

pub fn positivity_certificate(kind: IntegratorKind, coeffs: &CoefficientSet) -> Result<PositivityCertificate> {
    positivity_certificate_on(kind, coeffs, &default_lambda_h_grid())
}

/// Like [`positivity_certificate`] with an explicit grid of negative `lambda h`.
pub fn positivity_certificate_on(
    kind: IntegratorKind,
    coeffs: &CoefficientSet,
    lambda_h: &[f64],
) -> Result<PositivityCertificate> {
    let h = coeffs.h();
    let gains = lambda_h
        .iter()
        .map(|&mu| transient_gain(coeffs, mu / h))
        .collect::<Result<Vec<_>>>()?;
    let min_gain = gains.iter().copied().fold(f64::INFINITY, f64::min);
    let max_gain = gains.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let in_unit_interval = min_gain > 0.0 && max_gain < 1.0;

    let (applicable, discriminant, numerator_is_one, structural) = match kind {
        IntegratorKind::A | IntegratorKind::C => {
            let disc = coeffs.b_prev() * coeffs.b_prev() - 4.0 * coeffs.c_prev();
            (true, Some(disc), false, disc < 0.0)
        }
        IntegratorKind::B | IntegratorKind::D => {
            let one = coeffs.b_prev() == 0.0 && coeffs.c_prev() == 0.0;
            (true, None, one, one)
        }
        IntegratorKind::Tr | IntegratorKind::Be => (false, None, false, false),
    };
    Ok(PositivityCertificate {
        kind,
        applicable,
        discriminant,
        numerator_is_one,
        min_gain,
        max_gain,
        samples: gains.len(),
        pass: applicable && structural && in_unit_interval,
    })
}

/// Gains of every catalog kind at one `lambda h`, for tabulation.
pub fn gain_row(kinds: &[CoefficientSet], lambda_h: f64) -> Result<Vec<f64>> {
    kinds.iter().map(|c| transient_gain(c, lambda_h / c.h())).collect()
}

/// Same value as [`transient_gain`] through the complex amplification path.
pub fn transient_gain_via_amplification(coeffs: &CoefficientSet, lambda: f64) -> Result<f64> {
    crate::stability::amplification(coeffs, Complex64::new(lambda, 0.0)).map(|g| g.re)
}
