//! Writes a trace to disk, reads it back and audits it against the phase
//! oracle.

use std::fs::File;
use std::io::{BufReader, BufWriter};

use pi_lowerbound::instance::{HardInstance, InstanceParams};
use pi_lowerbound::iteration::{run, Criterion, RunConfig};
use pi_lowerbound::trace_io::{read_trace, write_trace};
use pi_lowerbound::verify::Audit;
use pi_lowerbound::Result;

pub fn run_example() -> Result<()> {
    let inst = HardInstance::build(InstanceParams::new(2)?)?;
    let init = inst.initial_policy();
    let config = RunConfig::new(Criterion::TotalReward).with_record_values(true);
    let trace = run(&inst.mdp, &init, &config)?;

    let dir = std::env::temp_dir().join(format!("pi-lowerbound-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("trace.jsonl");
    write_trace(&trace, BufWriter::new(File::create(&path)?))?;
    let loaded = read_trace(BufReader::new(File::open(&path)?), &inst.mdp, &init, Criterion::TotalReward)?;
    std::fs::remove_dir_all(&dir)?;

    let audit = Audit::new(&inst, &loaded)?;
    let report = audit.tier2();
    for check in &report.checks {
        println!("{:<40} {:>6} {}", check.name, check.checked, if check.pass { "pass" } else { "FAIL" });
    }
    assert!(report.all_pass());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
