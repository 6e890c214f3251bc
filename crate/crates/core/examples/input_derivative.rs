//! The step formula needs u'(t). Replacing the analytic derivative with a
//! backward difference costs the tuned integrator its exactness.

use froi::simulate::{finite_diff_input_derivative, run_params, run_system, CaseId, FdScheme, TestCaseParams};
use froi::IntegratorKind;

fn main() -> froi::Result<()> {
    let params = TestCaseParams::case(CaseId::SteadyState);
    for us in [125u32, 500, 2000] {
        let h = f64::from(us) * 1e-6;
        let analytic = run_params(&params, IntegratorKind::A, h, 1.0, None)?.error_percent;
        print!("h = {us:>4} us  analytic u': {analytic:.2e} %");
        for scheme in [FdScheme::Backward, FdScheme::Central] {
            let system =
                params
                    .system()
                    .with_input_derivative(finite_diff_input_derivative(&params.input(), scheme, h))?;
            let err = run_system(&system, &params, IntegratorKind::A, h, 1.0, None)?.error_percent;
            print!("  {scheme:?}: {err:.2e} %");
        }
        println!();
    }
    Ok(())
}
