//! Recurrent/transient decomposition of the Markov chain a policy induces.

use crate::mdp::{Mdp, Policy, StateId};

/// Recurrent classes and transient states of the chain induced by a policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStructure {
    /// Closed strongly connected components, each sorted by state id.
    pub recurrent_classes: Vec<Vec<StateId>>,
    pub transient_states: Vec<StateId>,
}

impl ChainStructure {
    pub fn is_recurrent(&self, s: StateId) -> bool {
        self.recurrent_classes.iter().any(|c| c.contains(&s))
    }
}

/// A strongly connected component of the policy graph.
#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub states: Vec<StateId>,
    /// No positive-probability transition leaves the component.
    pub closed: bool,
}

/// Strongly connected components of the positive-probability transition
/// graph under `policy`, ordered so that every component comes after all
/// components it can reach (sinks first).
pub(crate) fn components(mdp: &Mdp, policy: &Policy) -> Vec<Component> {
    let n = mdp.n_states();
    let succ: Vec<Vec<usize>> = mdp
        .states()
        .map(|s| policy.chosen(mdp, s).transitions.iter().map(|(t, _)| t.0).collect())
        .collect();

    // iterative Tarjan
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp_of = vec![UNSEEN; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge < succ[v].len() {
                let w = succ[v][*edge];
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp_of[w] = out.len();
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }

    out.into_iter()
        .enumerate()
        .map(|(ci, comp)| {
            let closed = comp
                .iter()
                .all(|&s| succ[s].iter().all(|&t| comp_of[t] == ci));
            Component {
                states: comp.into_iter().map(StateId).collect(),
                closed,
            }
        })
        .collect()
}

pub fn chain_structure(mdp: &Mdp, policy: &Policy) -> ChainStructure {
    let mut recurrent_classes = Vec::new();
    let mut transient_states = Vec::new();
    for comp in components(mdp, policy) {
        if comp.closed {
            recurrent_classes.push(comp.states);
        } else {
            transient_states.extend(comp.states);
        }
    }
    recurrent_classes.sort();
    transient_states.sort_unstable();
    ChainStructure {
        recurrent_classes,
        transient_states,
    }
}
