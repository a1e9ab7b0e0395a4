//! Iteration counts against 2^n.

use pi_lowerbound::instance::{HardInstance, InstanceParams};
use pi_lowerbound::iteration::{run, Criterion, RunConfig};
use pi_lowerbound::Result;

pub fn run_example() -> Result<()> {
    println!("{:>2} {:>6} {:>6}", "n", "iters", "2^n");
    for n in 1..=6 {
        let inst = HardInstance::build(InstanceParams::new(n)?)?;
        let config = RunConfig::new(Criterion::TotalReward).with_max_iterations(RunConfig::instance_budget(n));
        let trace = run(&inst.mdp, &inst.initial_policy(), &config)?;
        let k = trace.require_terminated()?.iteration_count();
        println!("{n:>2} {k:>6} {:>6}", 1 << n);
        assert!(k >= 1 << n);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
