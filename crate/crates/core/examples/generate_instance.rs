//! Builds the lower-bound instance for a few bits and looks at its shape.

use pi_lowerbound::instance::{HardInstance, InstanceParams, NamedState};
use pi_lowerbound::rational::format;
use pi_lowerbound::Result;

pub fn run_example() -> Result<()> {
    let inst = HardInstance::build(InstanceParams::new(3)?)?;
    println!("n = {}: {} states", inst.n(), inst.mdp.n_states());
    println!("escape probability of a_i: {}", format(&inst.params.rho()));

    for s in [NamedState::Bit(1), NamedState::Bit(3), NamedState::X, NamedState::Y] {
        let labels: Vec<_> = inst
            .mdp
            .actions(inst.id(s))
            .iter()
            .map(|a| format!("{}({})", a.label.as_deref().unwrap_or("?"), format(&a.reward)))
            .collect();
        println!("{s}: {}", labels.join(" "));
    }

    let json = serde_json::to_string(&inst.mdp.to_json())?;
    println!("instance JSON is {} bytes", json.len());
    assert!(inst.mdp.validate().is_ok());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
