//! Random MDP generators and evaluation oracles that do not go through the
//! library's linear algebra.

#![allow(dead_code)]

use pi_lowerbound::rational::{int, ratio, Rational};
use pi_lowerbound::{Action, Mdp, Policy, StateId};
use proptest::prelude::*;

/// Action at state `i` of a `size`-state MDP whose last state is a zero-reward
/// sink: targets are `i` itself (never alone) and later states.
fn absorbing_action(i: usize, size: usize) -> impl Strategy<Value = Action> {
    let later: Vec<usize> = (i + 1..size).collect();
    let max = later.len().min(3);
    (
        -6i64..=6,
        proptest::sample::subsequence(later, 1..=max),
        any::<bool>(),
        proptest::collection::vec(1i64..=5, 4),
    )
        .prop_map(move |(r, mut targets, with_self, weights)| {
            if with_self {
                targets.insert(0, i);
            }
            let total: i64 = weights[..targets.len()].iter().sum();
            let transitions = targets
                .iter()
                .zip(&weights)
                .map(|(&t, &w)| (StateId(t), ratio(w, total)))
                .collect();
            Action::new(int(r), transitions)
        })
}

/// MDPs with 2..=6 states and 1..=3 actions per state, in which every policy
/// is absorbed by the zero-reward sink (the last state).
pub fn absorbing_mdp() -> impl Strategy<Value = Mdp> {
    (2usize..=6).prop_flat_map(|size| {
        let states: Vec<_> = (0..size - 1)
            .map(|i| proptest::collection::vec(absorbing_action(i, size), 1..=3))
            .collect();
        states.prop_map(move |mut acts| {
            acts.push(vec![Action::deterministic(StateId(size - 1), int(0))]);
            Mdp::new(acts).expect("generator builds valid MDPs")
        })
    })
}

fn any_action(size: usize) -> impl Strategy<Value = Action> {
    (
        -6i64..=6,
        proptest::sample::subsequence((0..size).collect::<Vec<_>>(), 1..=size.min(3)),
        proptest::collection::vec(1i64..=5, 3),
    )
        .prop_map(|(r, targets, weights)| {
            let total: i64 = weights[..targets.len()].iter().sum();
            let transitions = targets
                .iter()
                .zip(&weights)
                .map(|(&t, &w)| (StateId(t), ratio(w, total)))
                .collect();
            Action::new(int(r), transitions)
        })
}

/// Unrestricted MDPs with 1..=6 states together with a policy. Recurrent
/// classes may be several, periodic, or carry nonzero reward.
pub fn mdp_with_policy() -> impl Strategy<Value = (Mdp, Policy)> {
    (1usize..=6)
        .prop_flat_map(|size| {
            proptest::collection::vec(proptest::collection::vec(any_action(size), 1..=3), size)
        })
        .prop_flat_map(|acts| {
            let mdp = Mdp::new(acts).expect("generator builds valid MDPs");
            let picks: Vec<_> = mdp.states().map(|s| 0..mdp.actions(s).len()).collect();
            (Just(mdp), picks)
        })
        .prop_map(|(mdp, choices)| {
            let p = Policy::new(&mdp, choices).expect("choices in range");
            (mdp, p)
        })
}

/// Total reward of `policy` on an MDP from [`absorbing_mdp`], by first-step
/// analysis from the sink backwards: `v(s) = (r + sum_{t > s} p_t v(t)) / (1 - p_s)`.
pub fn backward_values(mdp: &Mdp, policy: &Policy) -> Vec<Rational> {
    let n = mdp.n_states();
    let mut v = vec![int(0); n];
    for s in (0..n - 1).rev() {
        let a = policy.chosen(mdp, StateId(s));
        let mut stay = int(0);
        let mut acc = a.reward.clone();
        for (t, p) in &a.transitions {
            if t.0 == s {
                stay += p;
            } else {
                assert!(t.0 > s, "generator only targets later states");
                acc += p * &v[t.0];
            }
        }
        v[s] = acc / (int(1) - stay);
    }
    v
}

/// Every policy of `mdp`.
pub fn all_policies(mdp: &Mdp) -> Vec<Policy> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for s in mdp.states() {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..mdp.actions(s).len()).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|c| Policy::new(mdp, c).expect("in range"))
        .collect()
}

/// State-wise maximum of [`backward_values`] over all policies.
pub fn brute_force_optimum(mdp: &Mdp) -> Vec<Rational> {
    all_policies(mdp)
        .iter()
        .map(|p| backward_values(mdp, p))
        .reduce(|a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect())
        .expect("at least one policy")
}

/// Reachability closure of the policy graph, by repeated relaxation.
pub fn reach(mdp: &Mdp, policy: &Policy) -> Vec<Vec<bool>> {
    let n = mdp.n_states();
    let mut r = vec![vec![false; n]; n];
    for (s, row) in r.iter_mut().enumerate() {
        row[s] = true;
        for (t, _) in &policy.chosen(mdp, StateId(s)).transitions {
            row[t.0] = true;
        }
    }
    for k in 0..n {
        let via = r[k].clone();
        for row in r.iter_mut() {
            if row[k] {
                for (cell, &v) in row.iter_mut().zip(&via) {
                    *cell |= v;
                }
            }
        }
    }
    r
}

/// Recurrent classes: `s` is recurrent iff everything it reaches reaches it back.
pub fn recurrent_classes(mdp: &Mdp, policy: &Policy) -> Vec<Vec<StateId>> {
    let n = mdp.n_states();
    let r = reach(mdp, policy);
    let recurrent = |s: usize| (0..n).all(|t| !r[s][t] || r[t][s]);
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for s in 0..n {
        if seen[s] || !recurrent(s) {
            continue;
        }
        let class: Vec<StateId> = (0..n).filter(|&t| r[s][t] && r[t][s]).map(StateId).collect();
        for t in &class {
            seen[t.0] = true;
        }
        classes.push(class);
    }
    classes
}
