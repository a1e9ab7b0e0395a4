//! Greedy policy iteration.
//!
//! Each iteration evaluates the current policy exactly, collects the
//! switchable actions, and at every state that has one switches to the most
//! appealing action of that state.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::{
    appeal, bias_appeal, gain_appeal, gain_bias_values, total_reward_values, ValueReport,
};
use crate::mdp::{Mdp, Policy, StateId};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    #[serde(rename = "total")]
    TotalReward,
    #[serde(rename = "average")]
    AverageReward,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::TotalReward => "total",
            Criterion::AverageReward => "average",
        })
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "total" => Ok(Criterion::TotalReward),
            "average" => Ok(Criterion::AverageReward),
            other => Err(format!("unknown criterion {other:?} (expected total or average)")),
        }
    }
}

/// What the greedy rule does when two actions share the maximal appeal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieMode {
    /// The smallest action index wins.
    #[default]
    #[serde(rename = "lowest-index")]
    LowestIndex,
    /// A tie is an error.
    #[serde(rename = "strict")]
    StrictError,
}

impl FromStr for TieMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lowest-index" => Ok(TieMode::LowestIndex),
            "strict" => Ok(TieMode::StrictError),
            other => Err(format!("unknown tie mode {other:?} (expected lowest-index or strict)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchDecision {
    pub state: StateId,
    pub from_action: usize,
    pub to_action: usize,
    /// Appeal minus current value. Under the average-reward criterion this
    /// is the gain gap when the gain improves, else the bias gap.
    pub appeal_gap: Rational,
    /// Average-reward only: the switch strictly improves the gain.
    pub improves_gain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub index: usize,
    pub policy: Policy,
    pub values: Option<ValueReport>,
    /// Switches taken from this policy. Empty exactly on the final record
    /// of a terminated run. On a run cut short by the budget the last
    /// record lists the switches that would have been applied next.
    pub switches: Vec<SwitchDecision>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub criterion: Criterion,
    pub iterations: Vec<IterationRecord>,
    pub terminated: bool,
    pub final_policy: Policy,
}

impl TraceRecord {
    /// Number of improvement steps taken, i.e. policies visited minus one.
    pub fn iteration_count(&self) -> usize {
        self.iterations.len().saturating_sub(1)
    }

    pub fn policies(&self) -> impl Iterator<Item = &Policy> {
        self.iterations.iter().map(|r| &r.policy)
    }

    pub fn require_terminated(&self) -> Result<&Self> {
        if self.terminated {
            Ok(self)
        } else {
            Err(Error::IterationBudgetExceeded(self.iteration_count()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub criterion: Criterion,
    pub max_iterations: usize,
    pub tie_mode: TieMode,
    pub record_values: bool,
}

impl RunConfig {
    pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

    pub fn new(criterion: Criterion) -> Self {
        RunConfig {
            criterion,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            tie_mode: TieMode::LowestIndex,
            record_values: false,
        }
    }

    /// Budget for a lower-bound instance with `n` bits: `16 * 2^n + 64`.
    pub fn instance_budget(n: usize) -> usize {
        16usize.saturating_mul(1usize.checked_shl(n as u32).unwrap_or(usize::MAX)).saturating_add(64)
    }

    pub fn with_max_iterations(mut self, max: usize) -> Self {
        self.max_iterations = max;
        self
    }

    pub fn with_tie_mode(mut self, tie_mode: TieMode) -> Self {
        self.tie_mode = tie_mode;
        self
    }

    pub fn with_record_values(mut self, record: bool) -> Self {
        self.record_values = record;
        self
    }
}

pub fn evaluate(mdp: &Mdp, policy: &Policy, criterion: Criterion) -> Result<ValueReport> {
    Ok(match criterion {
        Criterion::TotalReward => ValueReport::Total(total_reward_values(mdp, policy)?),
        Criterion::AverageReward => ValueReport::Average(gain_bias_values(mdp, policy)?),
    })
}

/// Lexicographic score of an action: (gain appeal, bias appeal) for the
/// average-reward criterion, or (appeal) alone for total reward.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Score(Option<Rational>, Rational);

fn score(mdp: &Mdp, values: &ValueReport, s: StateId, a: usize) -> Result<Score> {
    Ok(match values {
        ValueReport::Total(v) => Score(None, appeal(mdp, v, s, a)?),
        ValueReport::Average(gb) => Score(
            Some(gain_appeal(mdp, &gb.gain, s, a)?),
            bias_appeal(mdp, gb, s, a)?,
        ),
    })
}

fn current_score(values: &ValueReport, s: StateId) -> Score {
    match values {
        ValueReport::Total(v) => Score(None, v[s].clone()),
        ValueReport::Average(gb) => Score(Some(gb.gain[s].clone()), gb.bias[s].clone()),
    }
}

fn decision(state: StateId, from: usize, to: usize, cand: &Score, cur: &Score) -> SwitchDecision {
    let improves_gain = matches!((&cand.0, &cur.0), (Some(a), Some(b)) if a > b);
    let appeal_gap = if improves_gain {
        cand.0.as_ref().unwrap() - cur.0.as_ref().unwrap()
    } else {
        &cand.1 - &cur.1
    };
    SwitchDecision {
        state,
        from_action: from,
        to_action: to,
        appeal_gap,
        improves_gain,
    }
}

fn check_criterion(values: &ValueReport, criterion: Criterion) {
    debug_assert!(matches!(
        (values, criterion),
        (ValueReport::Total(_), Criterion::TotalReward)
            | (ValueReport::Average(_), Criterion::AverageReward)
    ));
}

/// Every switchable action, grouped by state.
///
/// Total reward: `Appeal(s, a) > Val(s)`. Average reward: the action's gain
/// appeal exceeds `G(s)`, or equals it and its bias appeal exceeds `B(s)`.
pub fn switchable_actions(
    mdp: &Mdp,
    policy: &Policy,
    values: &ValueReport,
    criterion: Criterion,
) -> Result<Vec<Vec<SwitchDecision>>> {
    check_criterion(values, criterion);
    let mut out = Vec::with_capacity(mdp.n_states());
    for s in mdp.states() {
        let cur = current_score(values, s);
        let mut here = Vec::new();
        for a in 0..mdp.actions(s).len() {
            let sc = score(mdp, values, s, a)?;
            if sc > cur {
                here.push(decision(s, policy.choice(s), a, &sc, &cur));
            }
        }
        out.push(here);
    }
    Ok(out)
}

/// One greedy improvement step. Returns the new policy and the switches made;
/// the switch list is empty iff `policy` is already optimal.
pub fn greedy_step(
    mdp: &Mdp,
    policy: &Policy,
    values: &ValueReport,
    criterion: Criterion,
    tie_mode: TieMode,
) -> Result<(Policy, Vec<SwitchDecision>)> {
    check_criterion(values, criterion);
    let mut next = policy.clone();
    let mut switches = Vec::new();
    for s in mdp.states() {
        let cur = current_score(values, s);
        let mut best: Option<(usize, Score)> = None;
        let mut tied = Vec::new();
        for a in 0..mdp.actions(s).len() {
            let sc = score(mdp, values, s, a)?;
            match best.as_ref().map(|(_, b)| sc.cmp(b)) {
                None | Some(Ordering::Greater) => {
                    tied.clear();
                    tied.push(a);
                    best = Some((a, sc));
                }
                Some(Ordering::Equal) => tied.push(a),
                Some(Ordering::Less) => {}
            }
        }
        let (to, top) = best.expect("validated MDP has an action at every state");
        if top <= cur {
            continue;
        }
        if tie_mode == TieMode::StrictError && tied.len() > 1 {
            return Err(Error::AmbiguousArgmax { state: s, actions: tied });
        }
        switches.push(decision(s, policy.choice(s), to, &top, &cur));
        next.set(s, to);
    }
    Ok((next, switches))
}

/// Runs greedy policy iteration from `initial` until no action is
/// switchable or `config.max_iterations` improvement steps have been made.
pub fn run(mdp: &Mdp, initial: &Policy, config: &RunConfig) -> Result<TraceRecord> {
    if initial.len() != mdp.n_states() {
        return Err(Error::PolicyLength {
            expected: mdp.n_states(),
            found: initial.len(),
        });
    }
    let mut iterations = Vec::new();
    let mut policy = initial.clone();
    loop {
        let index = iterations.len();
        let values = evaluate(mdp, &policy, config.criterion)?;
        let (next, switches) =
            greedy_step(mdp, &policy, &values, config.criterion, config.tie_mode)?;
        let done = switches.is_empty();
        let out_of_budget = index >= config.max_iterations;
        iterations.push(IterationRecord {
            index,
            policy: policy.clone(),
            values: config.record_values.then_some(values),
            switches,
        });
        if done || out_of_budget {
            return Ok(TraceRecord {
                criterion: config.criterion,
                iterations,
                terminated: done,
                final_policy: policy,
            });
        }
        policy = next;
    }
}

/// Whether `policy` satisfies the optimality equations of `criterion`,
/// with every switchable (state, action) pair as witness otherwise.
pub fn check_optimal(
    mdp: &Mdp,
    policy: &Policy,
    values: &ValueReport,
    criterion: Criterion,
) -> Result<(bool, Vec<(StateId, usize)>)> {
    let witnesses: Vec<(StateId, usize)> = switchable_actions(mdp, policy, values, criterion)?
        .into_iter()
        .flatten()
        .map(|d| (d.state, d.to_action))
        .collect();
    Ok((witnesses.is_empty(), witnesses))
}
