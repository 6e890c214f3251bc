//! Percent error of every integrator on the 60 Hz benchmark, for six step
//! sizes, starting on the steady state (case 1) and off it (case 2).

use std::time::Instant;

use froi::simulate::{case_table, CaseId};

fn main() -> froi::Result<()> {
    for id in [CaseId::SteadyState, CaseId::InitialTransient] {
        let start = Instant::now();
        let table = case_table(id)?;
        println!("case {} ({:.2} s)", id as u8, start.elapsed().as_secs_f64());
        print!("{:>8}", "step_us");
        for k in &table.kinds {
            print!("{:>10}", k.label());
        }
        println!();
        for (us, row) in table.steps_us.iter().zip(&table.cells) {
            print!("{us:>8}");
            for v in row {
                print!("{v:>10.4}");
            }
            println!();
        }
        println!();
    }
    Ok(())
}
