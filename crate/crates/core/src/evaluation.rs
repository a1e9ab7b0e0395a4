//! Exact policy evaluation under the total-reward and average-reward
//! criteria.
//!
//! Both evaluators walk the strongly connected components of the policy
//! graph from the sinks upward. A component with no self-feedback is a single
//! back-substitution; anything else is a small dense system handed to
//! [`solve_linear`]. On the lower-bound family the policy graph is acyclic
//! apart from the bit self-loops, so evaluation is close to linear time.

use std::ops::Index;

use num_traits::{One, Zero};

use crate::chain::{components, Component};
use crate::error::{Error, Result};
use crate::linalg::solve_linear;
use crate::mdp::{Mdp, Policy, StateId};
use crate::rational::Rational;

/// One exact value per state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueVector(Vec<Rational>);

impl ValueVector {
    pub fn new(values: Vec<Rational>) -> Self {
        ValueVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        ValueVector(vec![Rational::zero(); n])
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl Index<StateId> for ValueVector {
    type Output = Rational;

    fn index(&self, s: StateId) -> &Rational {
        &self.0[s.0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainBias {
    pub gain: ValueVector,
    pub bias: ValueVector,
}

/// Values of a policy under one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueReport {
    Total(ValueVector),
    Average(GainBias),
}

impl ValueReport {
    /// The vector the greedy rule compares against: the total-reward value,
    /// or the bias for the average-reward criterion.
    pub fn primary(&self) -> &ValueVector {
        match self {
            ValueReport::Total(v) => v,
            ValueReport::Average(gb) => &gb.bias,
        }
    }
}

/// Total expected reward of `policy` from every state.
///
/// Recurrent states get value zero. The total reward is only defined when
/// every recurrent state's chosen action has reward zero; otherwise this
/// returns [`Error::IllDefinedTotalReward`].
pub fn total_reward_values(mdp: &Mdp, policy: &Policy) -> Result<ValueVector> {
    let mut values = vec![Rational::zero(); mdp.n_states()];
    for comp in components(mdp, policy) {
        if comp.closed {
            if let Some(&state) = comp
                .states
                .iter()
                .find(|&&s| !policy.chosen(mdp, s).reward.is_zero())
            {
                return Err(Error::IllDefinedTotalReward { state });
            }
            continue;
        }
        let rewards: Vec<Rational> = comp
            .states
            .iter()
            .map(|&s| policy.chosen(mdp, s).reward.clone())
            .collect();
        solve_transient(mdp, policy, &comp, &rewards, &mut values)?;
    }
    Ok(ValueVector(values))
}

/// Gain and bias of `policy`.
///
/// Within each recurrent class the gain is the stationary average reward and
/// the bias is normalised so that its stationary-weighted sum is zero.
/// Transient states solve `G = P G` and `B = r - G + P B` given the
/// downstream values.
pub fn gain_bias_values(mdp: &Mdp, policy: &Policy) -> Result<GainBias> {
    let n = mdp.n_states();
    let mut gain = vec![Rational::zero(); n];
    let mut bias = vec![Rational::zero(); n];
    for comp in components(mdp, policy) {
        if comp.closed {
            solve_recurrent_class(mdp, policy, &comp, &mut gain, &mut bias)?;
            continue;
        }
        let zeros = vec![Rational::zero(); comp.states.len()];
        solve_transient(mdp, policy, &comp, &zeros, &mut gain)?;
        let rewards: Vec<Rational> = comp
            .states
            .iter()
            .map(|&s| &policy.chosen(mdp, s).reward - &gain[s.0])
            .collect();
        solve_transient(mdp, policy, &comp, &rewards, &mut bias)?;
    }
    Ok(GainBias {
        gain: ValueVector(gain),
        bias: ValueVector(bias),
    })
}

/// Solves `v_C = r_C + P_CC v_C + P_C,out v_out` for a transient component,
/// where `v_out` is already present in `values`.
fn solve_transient(
    mdp: &Mdp,
    policy: &Policy,
    comp: &Component,
    rewards: &[Rational],
    values: &mut [Rational],
) -> Result<()> {
    if let [s] = comp.states[..] {
        let act = policy.chosen(mdp, s);
        if act.transitions.iter().all(|(t, _)| *t != s) {
            values[s.0] = &rewards[0] + act.expectation(values);
            return Ok(());
        }
    }
    let local = |s: StateId| comp.states.iter().position(|&c| c == s);
    let m = comp.states.len();
    let mut matrix = vec![vec![Rational::zero(); m]; m];
    let mut rhs = rewards.to_vec();
    for (row, &s) in comp.states.iter().enumerate() {
        matrix[row][row] = Rational::one();
        for (t, p) in &policy.chosen(mdp, s).transitions {
            match local(*t) {
                Some(col) => matrix[row][col] -= p,
                None => rhs[row] += p * &values[t.0],
            }
        }
    }
    let solution = solve_linear(&matrix, &rhs)?;
    for (&s, v) in comp.states.iter().zip(solution) {
        values[s.0] = v;
    }
    Ok(())
}

fn solve_recurrent_class(
    mdp: &Mdp,
    policy: &Policy,
    comp: &Component,
    gain: &mut [Rational],
    bias: &mut [Rational],
) -> Result<()> {
    let m = comp.states.len();
    let local = |s: StateId| {
        comp.states
            .iter()
            .position(|&c| c == s)
            .expect("closed class has a transition leaving it")
    };
    // I - P restricted to the class
    let mut i_minus_p = vec![vec![Rational::zero(); m]; m];
    for (row, &s) in comp.states.iter().enumerate() {
        i_minus_p[row][row] += Rational::one();
        for (t, p) in &policy.chosen(mdp, s).transitions {
            i_minus_p[row][local(*t)] -= p;
        }
    }
    let rewards: Vec<Rational> = comp
        .states
        .iter()
        .map(|&s| policy.chosen(mdp, s).reward.clone())
        .collect();

    // stationary distribution: sigma (I - P) = 0, sum sigma = 1.
    // Rows of (I - P)^T have one dependency, so the last is replaced.
    let mut st_matrix: Vec<Vec<Rational>> = (0..m)
        .map(|j| (0..m).map(|i| i_minus_p[i][j].clone()).collect())
        .collect();
    let mut st_rhs = vec![Rational::zero(); m];
    st_matrix[m - 1] = vec![Rational::one(); m];
    st_rhs[m - 1] = Rational::one();
    let sigma = solve_linear(&st_matrix, &st_rhs)?;

    let g: Rational = sigma.iter().zip(&rewards).map(|(p, r)| p * r).sum();

    // (I - P) h = r - g with sum sigma h = 0 in place of the last row
    let mut b_matrix = i_minus_p;
    let mut b_rhs: Vec<Rational> = rewards.iter().map(|r| r - &g).collect();
    b_matrix[m - 1] = sigma;
    b_rhs[m - 1] = Rational::zero();
    let h = solve_linear(&b_matrix, &b_rhs)?;

    for (&s, hv) in comp.states.iter().zip(h) {
        gain[s.0] = g.clone();
        bias[s.0] = hv;
    }
    Ok(())
}

/// The stationary distribution of one recurrent class, in the order of
/// `class`.
pub fn stationary_distribution(mdp: &Mdp, policy: &Policy, class: &[StateId]) -> Result<Vec<Rational>> {
    let m = class.len();
    let mut matrix = vec![vec![Rational::zero(); m]; m];
    for (i, &s) in class.iter().enumerate() {
        matrix[i][i] += Rational::one();
        for (t, p) in &policy.chosen(mdp, s).transitions {
            let j = class
                .iter()
                .position(|c| c == t)
                .ok_or_else(|| Error::InvalidMdp(format!("state {s} leaves the given class")))?;
            matrix[i][j] -= p;
        }
    }
    let mut transposed: Vec<Vec<Rational>> =
        (0..m).map(|j| (0..m).map(|i| matrix[i][j].clone()).collect()).collect();
    let mut rhs = vec![Rational::zero(); m];
    if m > 0 {
        transposed[m - 1] = vec![Rational::one(); m];
        rhs[m - 1] = Rational::one();
    }
    solve_linear(&transposed, &rhs)
}

/// `r(s, a) + sum_{s'} p(s'|s, a) * values(s')`.
pub fn appeal(mdp: &Mdp, values: &ValueVector, s: StateId, a: usize) -> Result<Rational> {
    let act = mdp.action(s, a)?;
    Ok(&act.reward + act.expectation(values.as_slice()))
}

/// `sum_{s'} p(s'|s, a) * G(s')`, the gain an action would lead to.
pub fn gain_appeal(mdp: &Mdp, gain: &ValueVector, s: StateId, a: usize) -> Result<Rational> {
    Ok(mdp.action(s, a)?.expectation(gain.as_slice()))
}

/// `r(s, a) - G(s) + sum_{s'} p(s'|s, a) * B(s')`.
pub fn bias_appeal(mdp: &Mdp, gb: &GainBias, s: StateId, a: usize) -> Result<Rational> {
    let act = mdp.action(s, a)?;
    Ok(&act.reward - &gb.gain[s] + act.expectation(gb.bias.as_slice()))
}

/// Per-state residual `V(s) - r(s, pi(s)) - sum p V(s')`.
pub fn total_reward_residual(mdp: &Mdp, policy: &Policy, values: &ValueVector) -> Vec<Rational> {
    mdp.states()
        .map(|s| {
            let act = policy.chosen(mdp, s);
            &values[s] - &act.reward - act.expectation(values.as_slice())
        })
        .collect()
}

/// Residuals of the gain equation `G = P G`, the bias equation
/// `B = r - G + P B`, and the per-class normalisation `sum sigma B = 0`.
#[derive(Clone, Debug)]
pub struct GainBiasResiduals {
    pub gain: Vec<Rational>,
    pub bias: Vec<Rational>,
    pub normalization: Vec<Rational>,
}

impl GainBiasResiduals {
    pub fn all_zero(&self) -> bool {
        self.gain
            .iter()
            .chain(&self.bias)
            .chain(&self.normalization)
            .all(Zero::is_zero)
    }
}

pub fn gain_bias_residuals(mdp: &Mdp, policy: &Policy, gb: &GainBias) -> Result<GainBiasResiduals> {
    let gain = mdp
        .states()
        .map(|s| &gb.gain[s] - policy.chosen(mdp, s).expectation(gb.gain.as_slice()))
        .collect();
    let bias = mdp
        .states()
        .map(|s| {
            let act = policy.chosen(mdp, s);
            &gb.bias[s] - (&act.reward - &gb.gain[s] + act.expectation(gb.bias.as_slice()))
        })
        .collect();
    let mut normalization = Vec::new();
    for class in crate::chain::chain_structure(mdp, policy).recurrent_classes {
        let sigma = stationary_distribution(mdp, policy, &class)?;
        normalization.push(sigma.iter().zip(&class).map(|(p, &s)| p * &gb.bias[s]).sum());
    }
    Ok(GainBiasResiduals {
        gain,
        bias,
        normalization,
    })
}
