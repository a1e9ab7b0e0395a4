//! Exact evaluation of a fixed policy under both criteria.

use pi_lowerbound::chain::chain_structure;
use pi_lowerbound::evaluation::{appeal, gain_bias_values, total_reward_values};
use pi_lowerbound::rational::{format, int, ratio};
use pi_lowerbound::{Action, Mdp, Policy, Result, StateId};

pub fn run_example() -> Result<()> {
    // 0 loops on itself with probability 3/4 (reward 2 per step), then
    // falls into the sink 1.
    let mdp = Mdp::new(vec![
        vec![Action::new(int(2), vec![(StateId(0), ratio(3, 4)), (StateId(1), ratio(1, 4))])
            .with_label("stay")],
        vec![Action::deterministic(StateId(1), int(0)).with_label("sink")],
    ])?;
    let policy = Policy::first_actions(&mdp);

    let values = total_reward_values(&mdp, &policy)?;
    println!("total reward: {}", values.iter().map(format).collect::<Vec<_>>().join(", "));
    assert_eq!(values[StateId(0)], int(8));
    assert_eq!(appeal(&mdp, &values, StateId(0), 0)?, values[StateId(0)]);

    let gb = gain_bias_values(&mdp, &policy)?;
    println!("gain: {:?}", gb.gain.iter().map(format).collect::<Vec<_>>());
    println!("bias: {:?}", gb.bias.iter().map(format).collect::<Vec<_>>());
    assert_eq!(gb.bias, values);

    let chains = chain_structure(&mdp, &policy);
    println!("recurrent classes: {:?}", chains.recurrent_classes);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
