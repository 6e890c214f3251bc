//! A fast pole (a = -5000) with a 2 ms step: the trapezoidal rule rings, the
//! tuned trapezoid decays slowly, and a few history-free startup steps fix it.

use froi::simulate::{run_params, SwitchPolicy, TestCaseParams};
use froi::IntegratorKind;

fn main() -> froi::Result<()> {
    let params = TestCaseParams::fast_transient();
    let h = 2e-3;
    let t_end = 0.02;

    let runs = IntegratorKind::ALL
        .iter()
        .map(|&k| run_params(&params, k, h, t_end, None))
        .collect::<froi::Result<Vec<_>>>()?;
    let policy = SwitchPolicy::new(IntegratorKind::B, IntegratorKind::A, 5)?;
    let switched = run_params(&params, IntegratorKind::A, h, t_end, Some(&policy))?;

    print!("{:>6} {:>9}", "t_ms", "exact");
    for k in IntegratorKind::ALL {
        print!(" {:>9}", k.label());
    }
    println!(" {:>9}", "B->A");
    for i in 0..runs[0].numerical.len() {
        print!(
            "{:>6.1} {:>9.4}",
            runs[0].numerical.time(i) * 1e3,
            runs[0].reference.values[i][0]
        );
        for r in &runs {
            print!(" {:>9.4}", r.numerical.values[i][0]);
        }
        println!(" {:>9.4}", switched.numerical.values[i][0]);
    }

    let full = |p: Option<&SwitchPolicy>| run_params(&params, IntegratorKind::A, h, 1.0, p).map(|r| r.error_percent);
    println!(
        "\nerror over 1 s: A {:.4} %, B then A {:.4} %",
        full(None)?,
        full(Some(&policy))?
    );
    Ok(())
}
