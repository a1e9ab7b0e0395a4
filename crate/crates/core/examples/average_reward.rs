//! Average-reward policy iteration on a chain with two closed classes.

use pi_lowerbound::iteration::{run, Criterion, RunConfig};
use pi_lowerbound::rational::{format, int};
use pi_lowerbound::{Action, Mdp, Policy, Result, StateId};

pub fn run_example() -> Result<()> {
    // State 0 chooses between a loop paying 1 per step (state 1) and a
    // two-cycle paying 3 every other step (states 2 and 3).
    let go = |t: usize, r: i64| Action::deterministic(StateId(t), int(r));
    let mdp = Mdp::new(vec![
        vec![go(1, 10), go(2, 0)],
        vec![go(1, 1)],
        vec![go(3, 3)],
        vec![go(2, 0)],
    ])?;

    let config = RunConfig::new(Criterion::AverageReward).with_record_values(true);
    let trace = run(&mdp, &Policy::first_actions(&mdp), &config)?;
    for rec in &trace.iterations {
        for sw in &rec.switches {
            println!(
                "iteration {}: state {} switches {} -> {} ({} gap {})",
                rec.index,
                sw.state,
                sw.from_action,
                sw.to_action,
                if sw.improves_gain { "gain" } else { "bias" },
                format(&sw.appeal_gap)
            );
        }
    }
    let Some(pi_lowerbound::ValueReport::Average(gb)) = &trace.iterations.last().unwrap().values else {
        unreachable!("average-reward run records gain and bias");
    };
    println!("gain {:?}", gb.gain.iter().map(format).collect::<Vec<_>>());
    println!("bias {:?}", gb.bias.iter().map(format).collect::<Vec<_>>());
    assert_eq!(trace.final_policy.choices(), &[1, 0, 0, 0]);
    assert_eq!(gb.gain[StateId(0)], pi_lowerbound::rational::ratio(3, 2));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
