//! Greedy policy iteration on a small stochastic shortest-path problem.

use pi_lowerbound::iteration::{check_optimal, run, Criterion, RunConfig};
use pi_lowerbound::rational::{format, int, ratio};
use pi_lowerbound::{Action, Mdp, Policy, Result, StateId};

pub fn run_example() -> Result<()> {
    // Three rooms and an exit (3). Each move costs something; the risky
    // shortcut from room 0 reaches the exit half of the time.
    let go = |t: usize, r: i64, label: &str| Action::deterministic(StateId(t), int(r)).with_label(label);
    let mdp = Mdp::new(vec![
        vec![
            go(1, -1, "walk"),
            Action::new(int(-2), vec![(StateId(3), ratio(1, 2)), (StateId(2), ratio(1, 2))])
                .with_label("shortcut"),
        ],
        vec![go(2, -1, "walk"), go(3, -5, "door")],
        vec![go(3, -1, "walk"), go(0, 0, "back")],
        vec![go(3, 0, "exit")],
    ])?;

    let config = RunConfig::new(Criterion::TotalReward).with_record_values(true);
    let trace = run(&mdp, &Policy::first_actions(&mdp), &config)?;
    for rec in &trace.iterations {
        let values = rec.values.as_ref().expect("recorded").primary();
        println!(
            "iteration {}: policy {:?} values [{}] switches {}",
            rec.index,
            rec.policy.choices(),
            values.iter().map(format).collect::<Vec<_>>().join(", "),
            rec.switches.len()
        );
    }

    let last = trace.iterations.last().expect("at least one policy");
    let (optimal, witnesses) =
        check_optimal(&mdp, &trace.final_policy, last.values.as_ref().expect("recorded"), Criterion::TotalReward)?;
    println!("optimal: {optimal}");
    assert!(optimal && witnesses.is_empty());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
