//! Watches policy iteration count in binary on the 3-bit instance.

use pi_lowerbound::instance::{HardInstance, InstanceParams};
use pi_lowerbound::iteration::{run, Criterion, RunConfig, TieMode};
use pi_lowerbound::verify::verify_counter;
use pi_lowerbound::Result;

pub fn run_example() -> Result<()> {
    let inst = HardInstance::build(InstanceParams::new(3)?)?;
    let config = RunConfig::new(Criterion::TotalReward)
        .with_tie_mode(TieMode::StrictError)
        .with_max_iterations(RunConfig::instance_budget(inst.n()));
    let trace = run(&inst.mdp, &inst.initial_policy(), &config)?;

    let report = verify_counter(&inst, &trace)?;
    for (iteration, bits) in &report.milestones {
        println!("iteration {iteration:>3}: {:03b} {bits}", bits.as_int());
    }
    println!("{} iterations for {} configurations", report.iteration_count, 1 << inst.n());
    assert!(report.complete() && report.order_ok && report.meets_bound(inst.n()));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
