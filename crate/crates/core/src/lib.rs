//! One-step integrators that use first and second derivatives, including
//! two families tuned to be exact at a chosen frequency, together with the
//! tools to analyse them:
//!
//! * [`integrators`] builds the coefficient sets (kinds A, B, C, D, TR, BE).
//! * [`freq`] evaluates the s-domain relative error and checks its roots.
//! * [`stability`] computes amplification factors and stability maps.
//! * [`transient`] classifies behaviour on fast decaying modes.
//! * [`simulate`] steps linear systems and reproduces the benchmark cases.
//! * [`report`] renders all of the above as CSV.
//! * [`cli`] is the command-line front end used by the `froi` binary.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod freq;
pub mod integrators;
pub mod report;
pub mod simulate;
pub mod stability;
pub mod transient;

pub use error::{Error, Result};
pub use integrators::{build_coefficients, validate_step_size, CoefficientSet, IntegratorKind, StepVerdict};
pub use num_complex::Complex64;
