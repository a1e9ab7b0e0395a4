//! JSON-lines trace files.
//!
//! One line per policy visited:
//!
//! ```text
//! {"iter":0,"switches":[{"state":3,"from":0,"to":2}],"values":{"0":"5","1":"-1/2"}}
//! ```
//!
//! `switches` lists the changes that lead from policy `iter` to policy
//! `iter + 1`; the final line of a terminated run has none. `values` is
//! present only when values were recorded. For average-reward traces it
//! holds the bias and a sibling `gain` map holds the gain. Policies are not
//! stored: a reader rebuilds them by replaying the switches from the initial
//! policy.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::evaluation::{GainBias, ValueReport, ValueVector};
use crate::iteration::{Criterion, IterationRecord, SwitchDecision, TraceRecord};
use crate::mdp::{Mdp, Policy, StateId};
use crate::rational::{self, format};

#[derive(Serialize, Deserialize)]
struct SwitchLine {
    state: usize,
    from: usize,
    to: usize,
}

/// Values keyed by state id, written in numeric order.
struct ValueMap<'a>(&'a ValueVector);

impl Serialize for ValueMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().enumerate() {
            map.serialize_entry(&k.to_string(), &format(v))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct LineOut<'a> {
    iter: usize,
    switches: Vec<SwitchLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<ValueMap<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gain: Option<ValueMap<'a>>,
}

#[derive(Deserialize)]
struct LineIn {
    iter: usize,
    switches: Vec<SwitchLine>,
    #[serde(default)]
    values: Option<BTreeMap<String, String>>,
    #[serde(default)]
    gain: Option<BTreeMap<String, String>>,
}

pub fn write_trace<W: Write>(trace: &TraceRecord, mut out: W) -> Result<()> {
    for rec in &trace.iterations {
        let (values, gain) = match &rec.values {
            None => (None, None),
            Some(ValueReport::Total(v)) => (Some(ValueMap(v)), None),
            Some(ValueReport::Average(gb)) => (Some(ValueMap(&gb.bias)), Some(ValueMap(&gb.gain))),
        };
        let line = LineOut {
            iter: rec.index,
            switches: rec
                .switches
                .iter()
                .map(|d| SwitchLine {
                    state: d.state.0,
                    from: d.from_action,
                    to: d.to_action,
                })
                .collect(),
            values,
            gain,
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn parse_values(map: BTreeMap<String, String>, n: usize, line: usize) -> Result<ValueVector> {
    let mut values = vec![None; n];
    for (k, v) in map {
        let idx: usize = k
            .parse()
            .map_err(|_| Error::TraceMismatch(format!("line {line}: bad state key {k:?}")))?;
        let slot = values
            .get_mut(idx)
            .ok_or_else(|| Error::TraceMismatch(format!("line {line}: state {idx} out of range")))?;
        *slot = Some(rational::parse(&v)?);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(s, v)| v.ok_or_else(|| Error::TraceMismatch(format!("line {line}: no value for state {s}"))))
        .collect::<Result<Vec<_>>>()
        .map(ValueVector::new)
}

/// Reads a trace written by [`write_trace`], replaying its switches from
/// `initial`. `criterion` is used when the file carries no values; a `gain`
/// map marks the trace as average-reward.
///
/// Appeal gaps are not stored, so the rebuilt switch decisions carry a gap
/// of zero.
pub fn read_trace<R: BufRead>(
    input: R,
    mdp: &Mdp,
    initial: &Policy,
    criterion: Criterion,
) -> Result<TraceRecord> {
    let mismatch = |line: usize, msg: String| Error::TraceMismatch(format!("line {line}: {msg}"));
    let mut policy = initial.clone();
    let mut iterations: Vec<IterationRecord> = Vec::new();
    let mut criterion = criterion;
    for (k, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = k + 1;
        let parsed: LineIn = serde_json::from_str(&line)?;
        if parsed.iter != iterations.len() {
            return Err(mismatch(lineno, format!("expected iter {}, found {}", iterations.len(), parsed.iter)));
        }
        if iterations.last().is_some_and(|r| r.switches.is_empty()) {
            return Err(mismatch(lineno, "line follows a line without switches".into()));
        }
        let n = mdp.n_states();
        let values = match (parsed.values, parsed.gain) {
            (None, None) => None,
            (Some(v), None) => Some(ValueReport::Total(parse_values(v, n, lineno)?)),
            (Some(b), Some(g)) => {
                criterion = Criterion::AverageReward;
                Some(ValueReport::Average(GainBias {
                    gain: parse_values(g, n, lineno)?,
                    bias: parse_values(b, n, lineno)?,
                }))
            }
            (None, Some(_)) => return Err(mismatch(lineno, "gain without values".into())),
        };
        let mut switches = Vec::with_capacity(parsed.switches.len());
        for sw in parsed.switches {
            let state = StateId(sw.state);
            if sw.state >= n {
                return Err(mismatch(lineno, format!("state {} out of range", sw.state)));
            }
            if policy.choice(state) != sw.from {
                return Err(mismatch(
                    lineno,
                    format!(
                        "switch at state {} claims action {} but the replayed policy plays {}",
                        sw.state,
                        sw.from,
                        policy.choice(state)
                    ),
                ));
            }
            switches.push(SwitchDecision {
                state,
                from_action: sw.from,
                to_action: sw.to,
                appeal_gap: rational::zero(),
                improves_gain: false,
            });
        }
        let next = policy.switch(
            mdp,
            &switches.iter().map(|d| (d.state, d.to_action)).collect::<Vec<_>>(),
        )?;
        iterations.push(IterationRecord {
            index: parsed.iter,
            policy: policy.clone(),
            values,
            switches,
        });
        policy = next;
    }
    let last = iterations
        .last()
        .ok_or_else(|| Error::TraceMismatch("trace is empty".into()))?;
    let terminated = last.switches.is_empty();
    let final_policy = last.policy.clone();
    Ok(TraceRecord {
        criterion,
        iterations,
        terminated,
        final_policy,
    })
}
