use std::path::PathBuf;

use crate::integrators::IntegratorKind;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("step size must be positive and finite, got {0}")]
    NonPositiveStep(f64),

    #[error("integrator {kind} needs a positive omega_select, got {omega}")]
    NonPositiveOmega { kind: IntegratorKind, omega: f64 },

    #[error("step size {h} s violates the bound of integrator {kind}: h must be < {bound} s")]
    StepBound { kind: IntegratorKind, h: f64, bound: f64 },

    #[error("derivative order {0} is not supported (expected 1..=4)")]
    UnsupportedOrder(u32),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("amplification denominator vanishes at lambda = {re} + {im}j")]
    SingularDenominator { re: f64, im: f64 },

    #[error("step matrix I - b0*A - c0*A^2 is singular")]
    SingularStepMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("traces are not sampled on the same grid: {0}")]
    MismatchedTraces(String),

    #[error("reference trace has zero norm")]
    ZeroReferenceNorm,

    #[error("invalid switch policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config: {0}")]
    Config(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
