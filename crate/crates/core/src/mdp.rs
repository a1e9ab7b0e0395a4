//! Finite MDPs with exact rewards and transition probabilities, and policies
//! over them.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One action: an immediate reward and a distribution over successor states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub reward: Rational,
    pub transitions: Vec<(StateId, Rational)>,
    pub label: Option<String>,
}

impl Action {
    pub fn new(reward: Rational, transitions: Vec<(StateId, Rational)>) -> Self {
        Action {
            reward,
            transitions,
            label: None,
        }
    }

    /// A single transition taken with probability one.
    pub fn deterministic(target: StateId, reward: Rational) -> Self {
        Action::new(reward, vec![(target, Rational::one())])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions.len() == 1
    }

    /// `sum_{s'} p(s'|s,a) * v(s')`.
    pub fn expectation(&self, values: &[Rational]) -> Rational {
        self.transitions
            .iter()
            .fold(Rational::zero(), |acc, (t, p)| acc + p * &values[t.0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub state: StateId,
    pub action: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.action {
            Some(a) => write!(f, "state {} action {}: {}", self.state, a, self.reason),
            None => write!(f, "state {}: {}", self.state, self.reason),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

/// A finite MDP. States are the dense ids `0..n_states()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mdp {
    actions: Vec<Vec<Action>>,
}

impl Mdp {
    /// Builds an MDP and rejects it unless [`Mdp::validate`] reports no
    /// violations.
    pub fn new(actions: Vec<Vec<Action>>) -> Result<Self> {
        let mdp = Mdp { actions };
        let report = mdp.validate();
        if report.is_ok() {
            Ok(mdp)
        } else {
            Err(Error::InvalidMdp(report.to_string()))
        }
    }

    /// Builds an MDP without checking it. Evaluators assume validity, so
    /// this is only for inspecting malformed inputs with [`Mdp::validate`].
    pub fn new_unchecked(actions: Vec<Vec<Action>>) -> Self {
        Mdp { actions }
    }

    pub fn n_states(&self) -> usize {
        self.actions.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.actions.len()).map(StateId)
    }

    pub fn actions(&self, s: StateId) -> &[Action] {
        &self.actions[s.0]
    }

    pub fn action(&self, s: StateId, a: usize) -> Result<&Action> {
        self.actions
            .get(s.0)
            .ok_or(Error::StateOutOfRange(s))?
            .get(a)
            .ok_or(Error::ActionOutOfRange { state: s, action: a })
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.actions.len();
        let mut violations = Vec::new();
        for (si, acts) in self.actions.iter().enumerate() {
            let state = StateId(si);
            if acts.is_empty() {
                violations.push(Violation {
                    state,
                    action: None,
                    reason: "state has no actions".into(),
                });
            }
            for (ai, act) in acts.iter().enumerate() {
                let mut flag = |reason: String| {
                    violations.push(Violation {
                        state,
                        action: Some(ai),
                        reason,
                    })
                };
                if act.transitions.is_empty() {
                    flag("action has no transitions".into());
                    continue;
                }
                let mut seen = BTreeSet::new();
                let mut total = Rational::zero();
                for (t, p) in &act.transitions {
                    if t.0 >= n {
                        flag(format!("target {t} is not a state"));
                    }
                    if !seen.insert(*t) {
                        flag(format!("target {t} listed twice"));
                    }
                    if !p.is_positive() {
                        flag(format!("probability {} to {t} is not positive", rational::format(p)));
                    }
                    total += p;
                }
                if !total.is_one() {
                    flag(format!(
                        "probabilities sum to {} ≠ 1",
                        rational::format(&total)
                    ));
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn to_json(&self) -> MdpJson {
        MdpJson {
            n_states: self.n_states(),
            actions: self
                .actions
                .iter()
                .map(|acts| {
                    acts.iter()
                        .map(|a| ActionJson {
                            reward: a.reward.clone(),
                            label: a.label.clone().unwrap_or_default(),
                            transitions: a
                                .transitions
                                .iter()
                                .map(|(t, p)| TransitionJson(t.0, p.clone()))
                                .collect(),
                        })
                        .collect()
                })
                .collect(),
            initial_policy: None,
        }
    }
}

/// Choice of one action index per state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Policy(Vec<usize>);

impl Policy {
    pub fn new(mdp: &Mdp, choices: Vec<usize>) -> Result<Self> {
        if choices.len() != mdp.n_states() {
            return Err(Error::PolicyLength {
                expected: mdp.n_states(),
                found: choices.len(),
            });
        }
        for (s, &a) in choices.iter().enumerate() {
            mdp.action(StateId(s), a)?;
        }
        Ok(Policy(choices))
    }

    /// Action 0 at every state.
    pub fn first_actions(mdp: &Mdp) -> Self {
        Policy(vec![0; mdp.n_states()])
    }

    pub fn choice(&self, s: StateId) -> usize {
        self.0[s.0]
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn chosen<'m>(&self, mdp: &'m Mdp, s: StateId) -> &'m Action {
        &mdp.actions(s)[self.0[s.0]]
    }

    /// Returns a copy with the given states switched to new actions.
    pub fn switch(&self, mdp: &Mdp, changes: &[(StateId, usize)]) -> Result<Policy> {
        let mut seen = BTreeSet::new();
        let mut next = self.0.clone();
        for &(s, a) in changes {
            mdp.action(s, a)?;
            if !seen.insert(s) {
                return Err(Error::DuplicateChange(s));
            }
            next[s.0] = a;
        }
        Ok(Policy(next))
    }

    pub(crate) fn set(&mut self, s: StateId, a: usize) {
        self.0[s.0] = a;
    }
}

pub fn policies_equal(p1: &Policy, p2: &Policy) -> Result<bool> {
    if p1.len() != p2.len() {
        return Err(Error::PolicyLength {
            expected: p1.len(),
            found: p2.len(),
        });
    }
    Ok(p1 == p2)
}

// JSON interchange:
// {"n_states": int, "actions": [[{"reward": "p/q", "label": str,
//   "transitions": [[state, "p/q"], ...]}, ...], ...]}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MdpJson {
    pub n_states: usize,
    pub actions: Vec<Vec<ActionJson>>,
    /// Optional starting policy, one action index per state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_policy: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionJson {
    #[serde(with = "rational::serde_string")]
    pub reward: Rational,
    #[serde(default)]
    pub label: String,
    pub transitions: Vec<TransitionJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionJson(
    pub usize,
    #[serde(with = "rational::serde_string")] pub Rational,
);

impl MdpJson {
    /// Converts to an [`Mdp`] without validating, so callers can report
    /// violations themselves.
    pub fn into_unchecked(self) -> Result<(Mdp, Option<Vec<usize>>)> {
        if self.actions.len() != self.n_states {
            return Err(Error::InvalidMdp(format!(
                "n_states is {} but {} action lists are given",
                self.n_states,
                self.actions.len()
            )));
        }
        let actions = self
            .actions
            .into_iter()
            .map(|acts| {
                acts.into_iter()
                    .map(|a| Action {
                        reward: a.reward,
                        transitions: a
                            .transitions
                            .into_iter()
                            .map(|TransitionJson(t, p)| (StateId(t), p))
                            .collect(),
                        label: if a.label.is_empty() { None } else { Some(a.label) },
                    })
                    .collect()
            })
            .collect();
        Ok((Mdp::new_unchecked(actions), self.initial_policy))
    }
}
