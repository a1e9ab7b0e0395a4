//! On the lower-bound family the average-reward run mirrors the
//! total-reward run step for step.

use pi_lowerbound::instance::{HardInstance, InstanceParams};
use pi_lowerbound::verify::verify_criterion_equivalence;
use pi_lowerbound::Result;

pub fn run_example() -> Result<()> {
    for n in 1..=3 {
        let inst = HardInstance::build(InstanceParams::new(n)?)?;
        let report = verify_criterion_equivalence(&inst)?;
        let summary: Vec<String> = report
            .checks
            .iter()
            .map(|c| format!("{}={}", c.name, c.pass))
            .collect();
        println!("n={n}: {}", summary.join(" "));
        assert!(report.all_pass());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
