//! Fixed-step time-domain simulation of linear systems `x' = A x + B u`.
//!
//! The second derivative needed by the discretization comes straight from
//! the system matrices, `x'' = A^2 x + A B u + B u'`, so each step solves
//!
//! ```text
//! (I - b_now A - c_now A^2) x_t = a_prev x_p + b_prev (A x_p + B u_p)
//!     + c_prev (A^2 x_p + A B u_p + B u'_p) + b_now B u_t + c_now (A B u_t + B u'_t)
//! ```
//!
//! The left-hand matrix depends only on the system and the coefficients and
//! is factored once per [`Stepper`].

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Dyn, LU};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrators::{build_coefficients, CoefficientSet, IntegratorKind};

/// Synchronous angular frequency of the benchmark system, rad/s.
pub const OMEGA_SYN: f64 = 120.0 * PI;

/// Step sizes of the benchmark tables, microseconds.
pub const TABLE_STEPS_US: [u32; 6] = [125, 250, 500, 1000, 2000, 4000];

pub const DEFAULT_STARTUP_STEPS: usize = 5;

/// Vector-valued function of time.
#[derive(Clone)]
pub struct Signal(Arc<dyn Fn(f64) -> DVector<f64> + Send + Sync>);

impl Signal {
    pub fn new(f: impl Fn(f64) -> DVector<f64> + Send + Sync + 'static) -> Self {
        Signal(Arc::new(f))
    }

    pub fn scalar(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Signal::new(move |t| DVector::from_element(1, f(t)))
    }

    pub fn zero(m: usize) -> Self {
        Signal::new(move |_| DVector::zeros(m))
    }

    pub fn eval(&self, t: f64) -> DVector<f64> {
        (self.0)(t)
    }
}

impl std::fmt::Debug for Signal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Signal(..)")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdScheme {
    /// `(u(t) - u(t - h)) / h`; uses past samples only.
    Backward,
    /// `(u(t + h) - u(t - h)) / 2h`.
    Central,
}

/// Approximates `u'` by finite differences of `u` with spacing `h_fd`.
pub fn finite_diff_input_derivative(u: &Signal, scheme: FdScheme, h_fd: f64) -> Signal {
    let u = u.clone();
    match scheme {
        FdScheme::Backward => Signal::new(move |t| (u.eval(t) - u.eval(t - h_fd)) / h_fd),
        FdScheme::Central => Signal::new(move |t| (u.eval(t + h_fd) - u.eval(t - h_fd)) / (2.0 * h_fd)),
    }
}

#[derive(Debug, Clone)]
pub struct LinearSystem {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    u: Signal,
    u_dot: Signal,
}

impl LinearSystem {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, u: Signal, u_dot: Signal) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "A must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if b.nrows() != a.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "B has {} rows, A has {}",
                b.nrows(),
                a.nrows()
            )));
        }
        let m = b.ncols();
        for (name, sig) in [("u", &u), ("u_dot", &u_dot)] {
            let len = sig.eval(0.0).len();
            if len != m {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has length {len}, B has {m} columns"
                )));
            }
        }
        Ok(LinearSystem { a, b, u, u_dot })
    }

    /// `x' = a x + b u` with scalar state and input.
    pub fn scalar(a: f64, b: f64, u: Signal, u_dot: Signal) -> Result<Self> {
        LinearSystem::new(DMatrix::from_element(1, 1, a), DMatrix::from_element(1, 1, b), u, u_dot)
    }

    /// `x' = A x` with no input.
    pub fn autonomous(a: DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        LinearSystem::new(a, DMatrix::zeros(n, 0), Signal::zero(0), Signal::zero(0))
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }
    pub fn m(&self) -> usize {
        self.b.ncols()
    }
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }
    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }
    pub fn with_input_derivative(mut self, u_dot: Signal) -> Result<Self> {
        let len = u_dot.eval(0.0).len();
        if len != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "u_dot has length {len}, B has {} columns",
                self.m()
            )));
        }
        self.u_dot = u_dot;
        Ok(self)
    }
}

/// One integrator bound to one system, with the step matrix already factored.
pub struct Stepper<'a> {
    system: &'a LinearSystem,
    coeffs: CoefficientSet,
    a2: DMatrix<f64>,
    ab: DMatrix<f64>,
    lu: LU<f64, Dyn, Dyn>,
}

impl<'a> Stepper<'a> {
    pub fn new(system: &'a LinearSystem, coeffs: CoefficientSet) -> Result<Self> {
        let n = system.n();
        let a2 = &system.a * &system.a;
        let ab = &system.a * &system.b;
        let lhs = DMatrix::identity(n, n) - &system.a * coeffs.b_now() - &a2 * coeffs.c_now();
        let lu = lhs.lu();
        if !lu.is_invertible() {
            return Err(Error::SingularStepMatrix);
        }
        Ok(Stepper {
            system,
            coeffs,
            a2,
            ab,
            lu,
        })
    }

    pub fn coeffs(&self) -> &CoefficientSet {
        &self.coeffs
    }

    /// Advances `x_prev` at `t_prev` by one step of size `h`.
    pub fn step(&self, x_prev: &DVector<f64>, t_prev: f64) -> Result<DVector<f64>> {
        let sys = self.system;
        if x_prev.len() != sys.n() {
            return Err(Error::DimensionMismatch(format!(
                "state has length {}, system has {}",
                x_prev.len(),
                sys.n()
            )));
        }
        let c = &self.coeffs;
        let t = t_prev + c.h();

        let mut rhs = x_prev * c.a_prev();
        if c.b_prev() != 0.0 || c.c_prev() != 0.0 {
            let u_p = sys.u.eval(t_prev);
            let dx_p = &sys.a * x_prev + &sys.b * &u_p;
            rhs += dx_p * c.b_prev();
            if c.c_prev() != 0.0 {
                let ddx_p = &self.a2 * x_prev + &self.ab * &u_p + &sys.b * sys.u_dot.eval(t_prev);
                rhs += ddx_p * c.c_prev();
            }
        }
        if sys.m() > 0 {
            let u_t = sys.u.eval(t);
            let bu_t = &sys.b * &u_t;
            rhs += &bu_t * c.b_now();
            if c.c_now() != 0.0 {
                let forced = &self.ab * &u_t + &sys.b * sys.u_dot.eval(t);
                rhs += forced * c.c_now();
            }
        }

        let x = self.lu.solve(&rhs).ok_or(Error::SingularStepMatrix)?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularStepMatrix);
        }
        Ok(x)
    }
}

/// Single step that factors the step matrix from scratch.
pub fn step(
    system: &LinearSystem,
    coeffs: &CoefficientSet,
    x_prev: &DVector<f64>,
    t_prev: f64,
) -> Result<DVector<f64>> {
    Stepper::new(system, *coeffs)?.step(x_prev, t_prev)
}

/// Uniformly sampled solution starting at `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub t0: f64,
    pub h: f64,
    pub values: Vec<DVector<f64>>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|k| self.time(k))
    }
    /// Component `i` of every sample.
    pub fn component(&self, i: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[i]).collect()
    }
}

/// Integrator schedule that restarts with a history-free kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchPolicy {
    pub startup_kind: IntegratorKind,
    pub main_kind: IntegratorKind,
    pub startup_steps: usize,
}

impl SwitchPolicy {
    pub fn new(startup_kind: IntegratorKind, main_kind: IntegratorKind, startup_steps: usize) -> Result<Self> {
        if !startup_kind.is_history_free() {
            return Err(Error::InvalidPolicy(format!(
                "startup integrator {startup_kind} uses derivative history (needs b_prev = c_prev = 0)"
            )));
        }
        if startup_steps == 0 {
            return Err(Error::InvalidPolicy("startup_steps must be positive".into()));
        }
        Ok(SwitchPolicy {
            startup_kind,
            main_kind,
            startup_steps,
        })
    }

    /// `startup_kind` for the first [`DEFAULT_STARTUP_STEPS`] steps.
    pub fn with_default_steps(startup_kind: IntegratorKind, main_kind: IntegratorKind) -> Result<Self> {
        SwitchPolicy::new(startup_kind, main_kind, DEFAULT_STARTUP_STEPS)
    }
}

/// Number of whole steps of size `h` that fit in `[0, t_end]`.
pub fn step_count(t_end: f64, h: f64) -> Result<usize> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::NonPositiveStep(h));
    }
    let ratio = t_end / h;
    // absorb representation error so that e.g. 1 / 125e-6 counts 8000 steps
    let n = (ratio * (1.0 + 1e-12)).floor();
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_end = {t_end} s must be at least h = {h} s"
        )));
    }
    Ok(n as usize)
}

/// Fixed-step march from `t = 0` to the last multiple of `h` not beyond `t_end`.
///
/// With a policy, the first `startup_steps` use `policy.startup_kind` and the
/// rest use `kind`, which must equal `policy.main_kind`.
pub fn simulate(
    system: &LinearSystem,
    kind: IntegratorKind,
    omega_select: f64,
    h: f64,
    t_end: f64,
    x0: &DVector<f64>,
    policy: Option<&SwitchPolicy>,
) -> Result<Trace> {
    if x0.len() != system.n() {
        return Err(Error::DimensionMismatch(format!(
            "x0 has length {}, system has {}",
            x0.len(),
            system.n()
        )));
    }
    let steps = step_count(t_end, h)?;
    let main = Stepper::new(system, build_coefficients(kind, omega_select, h)?)?;
    let startup = match policy {
        Some(p) => {
            if p.main_kind != kind {
                return Err(Error::InvalidPolicy(format!(
                    "policy main integrator {} does not match requested {kind}",
                    p.main_kind
                )));
            }
            let s = Stepper::new(system, build_coefficients(p.startup_kind, omega_select, h)?)?;
            Some((s, p.startup_steps))
        }
        None => None,
    };

    let mut values = Vec::with_capacity(steps + 1);
    values.push(x0.clone());
    for k in 0..steps {
        let stepper = match &startup {
            Some((s, n)) if k < *n => s,
            _ => &main,
        };
        let next = stepper.step(&values[k], k as f64 * h)?;
        values.push(next);
    }
    Ok(Trace { t0: 0.0, h, values })
}

/// `100 * ||x_num - x_ref||_2 / ||x_ref||_2` over every common sample, `t = 0` included.
pub fn error_percent(numerical: &Trace, reference: &Trace) -> Result<f64> {
    if numerical.len() != reference.len() {
        return Err(Error::MismatchedTraces(format!(
            "{} vs {} samples",
            numerical.len(),
            reference.len()
        )));
    }
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300);
    if numerical.t0 != reference.t0 || !same(numerical.h, reference.h) {
        return Err(Error::MismatchedTraces(format!(
            "t0/h {}/{} vs {}/{}",
            numerical.t0, numerical.h, reference.t0, reference.h
        )));
    }
    let mut diff2 = 0.0;
    let mut ref2 = 0.0;
    for (x, r) in numerical.values.iter().zip(&reference.values) {
        if x.len() != r.len() {
            return Err(Error::MismatchedTraces("state dimensions differ".into()));
        }
        diff2 += (x - r).norm_squared();
        ref2 += r.norm_squared();
    }
    if ref2 == 0.0 {
        return Err(Error::ZeroReferenceNorm);
    }
    Ok(100.0 * (diff2 / ref2).sqrt())
}

/// Scalar benchmark `x' = a x + b cos(omega_syn t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestCaseParams {
    pub a: f64,
    pub b: f64,
    pub omega_syn: f64,
    pub x0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseId {
    /// Starts on the sinusoidal steady state.
    SteadyState = 1,
    /// Starts at `x0 = 2`, with a decaying transient.
    InitialTransient = 2,
}

impl TryFrom<u8> for CaseId {
    type Error = Error;
    fn try_from(id: u8) -> Result<Self> {
        match id {
            1 => Ok(CaseId::SteadyState),
            2 => Ok(CaseId::InitialTransient),
            other => Err(Error::InvalidArgument(format!("case id must be 1 or 2, got {other}"))),
        }
    }
}

impl TestCaseParams {
    pub const A: f64 = -5.0;
    pub const B: f64 = 300.0;

    /// Initial value that puts the system directly on its forced sinusoid.
    pub fn steady_state_x0(a: f64, b: f64, omega_syn: f64) -> f64 {
        -a * b / (omega_syn * omega_syn + a * a)
    }

    pub fn case(id: CaseId) -> Self {
        let x0 = match id {
            CaseId::SteadyState => Self::steady_state_x0(Self::A, Self::B, OMEGA_SYN),
            CaseId::InitialTransient => 2.0,
        };
        TestCaseParams {
            a: Self::A,
            b: Self::B,
            omega_syn: OMEGA_SYN,
            x0,
        }
    }

    /// The initial-transient case with the pole moved to `a = -5000`.
    pub fn fast_transient() -> Self {
        TestCaseParams {
            a: -5000.0,
            ..Self::case(CaseId::InitialTransient)
        }
    }

    /// The system with `u = cos(w t)` and the analytic `u' = -w sin(w t)`.
    pub fn system(&self) -> LinearSystem {
        let w = self.omega_syn;
        LinearSystem::scalar(
            self.a,
            self.b,
            Signal::scalar(move |t| (w * t).cos()),
            Signal::scalar(move |t| -w * (w * t).sin()),
        )
        .expect("scalar system dimensions are consistent")
    }

    pub fn input(&self) -> Signal {
        let w = self.omega_syn;
        Signal::scalar(move |t| (w * t).cos())
    }

    /// Closed-form solution:
    /// `(x0 + a b/(w^2+a^2)) e^{a t} + b (w sin(w t) - a cos(w t)) / (w^2 + a^2)`.
    pub fn analytic(&self, t: f64) -> f64 {
        let (a, b, w) = (self.a, self.b, self.omega_syn);
        let d = w * w + a * a;
        (self.x0 + a * b / d) * (a * t).exp() + b * (w / d * (w * t).sin() - a / d * (w * t).cos())
    }

    pub fn reference_trace(&self, h: f64, steps: usize) -> Trace {
        Trace {
            t0: 0.0,
            h,
            values: (0..=steps)
                .map(|k| DVector::from_element(1, self.analytic(k as f64 * h)))
                .collect(),
        }
    }

    pub fn x0_vector(&self) -> DVector<f64> {
        DVector::from_element(1, self.x0)
    }
}

pub fn analytic_case_solution(params: &TestCaseParams, t: f64) -> f64 {
    params.analytic(t)
}

/// Outcome of one benchmark run.
#[derive(Debug, Clone)]
pub struct CaseRun {
    pub numerical: Trace,
    pub reference: Trace,
    pub error_percent: f64,
}

/// Simulates `params` with `kind` and compares against the closed form.
pub fn run_params(
    params: &TestCaseParams,
    kind: IntegratorKind,
    h: f64,
    t_end: f64,
    policy: Option<&SwitchPolicy>,
) -> Result<CaseRun> {
    run_system(&params.system(), params, kind, h, t_end, policy)
}

/// As [`run_params`] but with a caller-supplied system (e.g. a different `u'`).
pub fn run_system(
    system: &LinearSystem,
    params: &TestCaseParams,
    kind: IntegratorKind,
    h: f64,
    t_end: f64,
    policy: Option<&SwitchPolicy>,
) -> Result<CaseRun> {
    // Kinds that ignore omega_select store 0, so omega_syn can go to every kind.
    let numerical = simulate(system, kind, params.omega_syn, h, t_end, &params.x0_vector(), policy)?;
    let reference = params.reference_trace(h, numerical.len() - 1);
    let error_percent = error_percent(&numerical, &reference)?;
    Ok(CaseRun {
        numerical,
        reference,
        error_percent,
    })
}

/// Percent error of `kind` at step `h` on benchmark case `id`, over 0..1 s.
pub fn run_case(id: CaseId, kind: IntegratorKind, h: f64) -> Result<f64> {
    Ok(run_params(&TestCaseParams::case(id), kind, h, 1.0, None)?.error_percent)
}

/// Percent errors for every table step size (rows) and integrator (columns).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseTable {
    pub case: CaseId,
    pub steps_us: Vec<u32>,
    pub kinds: Vec<IntegratorKind>,
    pub cells: Vec<Vec<f64>>,
}

impl CaseTable {
    pub fn get(&self, step_us: u32, kind: IntegratorKind) -> Option<f64> {
        let r = self.steps_us.iter().position(|&s| s == step_us)?;
        let c = self.kinds.iter().position(|&k| k == kind)?;
        Some(self.cells[r][c])
    }
}

/// Runs all 36 cells of a benchmark table, one simulation per cell in parallel.
pub fn case_table(id: CaseId) -> Result<CaseTable> {
    let kinds = IntegratorKind::ALL.to_vec();
    let jobs: Vec<(usize, usize)> = (0..TABLE_STEPS_US.len())
        .flat_map(|r| (0..kinds.len()).map(move |c| (r, c)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(r, c)| run_case(id, kinds[c], f64::from(TABLE_STEPS_US[r]) * 1e-6))
        .collect::<Result<Vec<f64>>>()?;
    let cells = results.chunks(kinds.len()).map(<[f64]>::to_vec).collect();
    Ok(CaseTable {
        case: id,
        steps_us: TABLE_STEPS_US.to_vec(),
        kinds,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::amplification;
    use num_complex::Complex64;

    #[test]
    fn zero_system_holds_state() {
        let sys = LinearSystem::new(
            DMatrix::zeros(2, 2),
            DMatrix::zeros(2, 1),
            Signal::scalar(f64::sin),
            Signal::scalar(f64::cos),
        )
        .unwrap();
        let x = DVector::from_vec(vec![1.5, -2.0]);
        for kind in IntegratorKind::ALL {
            let c = build_coefficients(kind, 10.0, 0.01).unwrap();
            assert_eq!(step(&sys, &c, &x, 0.3).unwrap(), x);
        }
    }

    #[test]
    fn scalar_step_matches_amplification() {
        let lambda = -37.0;
        let sys = LinearSystem::autonomous(DMatrix::from_element(1, 1, lambda)).unwrap();
        for kind in IntegratorKind::ALL {
            let c = build_coefficients(kind, OMEGA_SYN, 2e-3).unwrap();
            let g = amplification(&c, Complex64::new(lambda, 0.0)).unwrap().re;
            let x = step(&sys, &c, &DVector::from_element(1, 0.7), 0.0).unwrap()[0];
            assert!((x - 0.7 * g).abs() <= 1e-13 * (0.7 * g).abs(), "{kind}");
        }
    }

    #[test]
    fn tuned_trapezoid_is_exact_on_steady_state() {
        let params = TestCaseParams::case(CaseId::SteadyState);
        let h = 2e-3;
        let c = build_coefficients(IntegratorKind::A, OMEGA_SYN, h).unwrap();
        let x1 = step(&params.system(), &c, &params.x0_vector(), 0.0).unwrap()[0];
        let exact = params.analytic(h);
        assert!((x1 - exact).abs() < 1e-9 * exact.abs());
    }

    #[test]
    fn singular_step_matrix() {
        // BE with h = 1/lambda puts lambda on the pole of g.
        let sys = LinearSystem::autonomous(DMatrix::from_element(1, 1, 2.0)).unwrap();
        let c = build_coefficients(IntegratorKind::Be, 0.0, 0.5).unwrap();
        assert!(matches!(Stepper::new(&sys, c), Err(Error::SingularStepMatrix)));
    }

    #[test]
    fn dimension_checks() {
        let bad = LinearSystem::new(
            DMatrix::zeros(2, 3),
            DMatrix::zeros(2, 1),
            Signal::zero(1),
            Signal::zero(1),
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
        let bad = LinearSystem::new(
            DMatrix::zeros(2, 2),
            DMatrix::zeros(3, 1),
            Signal::zero(1),
            Signal::zero(1),
        );
        assert!(bad.is_err());
        let bad = LinearSystem::new(
            DMatrix::zeros(2, 2),
            DMatrix::zeros(2, 1),
            Signal::zero(2),
            Signal::zero(1),
        );
        assert!(bad.is_err());
        let sys = LinearSystem::autonomous(DMatrix::zeros(2, 2)).unwrap();
        let c = build_coefficients(IntegratorKind::C, 0.0, 0.1).unwrap();
        assert!(step(&sys, &c, &DVector::zeros(3), 0.0).is_err());
    }

    #[test]
    fn one_step_trace() {
        let params = TestCaseParams::case(CaseId::InitialTransient);
        let tr = simulate(
            &params.system(),
            IntegratorKind::D,
            0.0,
            1e-3,
            1e-3,
            &params.x0_vector(),
            None,
        )
        .unwrap();
        assert_eq!(tr.len(), 2);
        assert_eq!(tr.values[0][0], 2.0);
        assert!(simulate(
            &params.system(),
            IntegratorKind::D,
            0.0,
            1e-3,
            0.5e-3,
            &params.x0_vector(),
            None
        )
        .is_err());
    }

    #[test]
    fn step_counts() {
        for us in TABLE_STEPS_US {
            let h = f64::from(us) * 1e-6;
            assert_eq!(step_count(1.0, h).unwrap(), (1_000_000 / us) as usize);
        }
        assert_eq!(step_count(1.05, 0.1).unwrap(), 10);
        assert!(step_count(1.0, 0.0).is_err());
    }

    #[test]
    fn analytic_solution_properties() {
        for id in [CaseId::SteadyState, CaseId::InitialTransient] {
            let p = TestCaseParams::case(id);
            assert!((p.analytic(0.0) - p.x0).abs() < 1e-15);
        }
        let steady = TestCaseParams::case(CaseId::SteadyState);
        assert_eq!(steady.x0 + steady.a * steady.b / (OMEGA_SYN * OMEGA_SYN + 25.0), 0.0);
        let transient = TestCaseParams::case(CaseId::InitialTransient);
        for t in [3.0, 5.0, 7.0] {
            let gap = (transient.analytic(t) - steady.analytic(t)).abs();
            let expected = (2.0 - steady.x0) * (-5.0 * t).exp();
            assert!((gap - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn error_percent_contract() {
        let p = TestCaseParams::case(CaseId::SteadyState);
        let r = p.reference_trace(1e-3, 10);
        assert_eq!(error_percent(&r, &r).unwrap(), 0.0);
        let short = p.reference_trace(1e-3, 9);
        assert!(matches!(error_percent(&r, &short), Err(Error::MismatchedTraces(_))));
        let other_h = p.reference_trace(2e-3, 10);
        assert!(matches!(error_percent(&r, &other_h), Err(Error::MismatchedTraces(_))));
        let zero = Trace {
            t0: 0.0,
            h: 1.0,
            values: vec![DVector::zeros(1); 3],
        };
        assert!(matches!(error_percent(&zero, &zero), Err(Error::ZeroReferenceNorm)));
        let mut bumped = r.clone();
        bumped.values[3][0] += 1.0;
        let expected = 100.0 / r.values.iter().map(|v| v[0] * v[0]).sum::<f64>().sqrt();
        assert!((error_percent(&bumped, &r).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn finite_difference_signals() {
        let konst = Signal::scalar(|_| 4.2);
        for scheme in [FdScheme::Backward, FdScheme::Central] {
            assert_eq!(finite_diff_input_derivative(&konst, scheme, 1e-3).eval(0.7)[0], 0.0);
        }
        let w = OMEGA_SYN;
        let u = Signal::scalar(move |t| (w * t).cos());
        let d = finite_diff_input_derivative(&u, FdScheme::Central, 1e-6).eval(1e-3)[0];
        let exact = -w * (w * 1e-3).sin();
        assert!((d - exact).abs() < 1e-6 * exact.abs());
    }

    #[test]
    fn policy_validation() {
        assert!(SwitchPolicy::new(IntegratorKind::A, IntegratorKind::A, 3).is_err());
        assert!(SwitchPolicy::new(IntegratorKind::B, IntegratorKind::A, 0).is_err());
        let p = SwitchPolicy::with_default_steps(IntegratorKind::D, IntegratorKind::C).unwrap();
        assert_eq!(p.startup_steps, 5);
        let params = TestCaseParams::case(CaseId::InitialTransient);
        let r = simulate(
            &params.system(),
            IntegratorKind::A,
            OMEGA_SYN,
            1e-3,
            0.01,
            &params.x0_vector(),
            Some(&p),
        );
        assert!(matches!(r, Err(Error::InvalidPolicy(_))));
    }
}
