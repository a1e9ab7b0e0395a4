//! Checks a policy-iteration trace on a hard instance against the predicted
//! binary-counter behaviour.
//!
//! Tier 1 checks are exact and must all pass: milestones, iteration count,
//! the value inequalities the construction relies on, closed-form values and
//! monotonicity. Tier 2 compares every policy of the trace against the phase
//! oracle and lists each mismatch.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::evaluation::{appeal, total_reward_values, ValueReport, ValueVector};
use crate::instance::{
    closed_form_c_value, phases, Configuration, HardInstance, NamedState,
    PhaseTag,
};
use crate::iteration::{run, Criterion, RunConfig, TieMode, TraceRecord};
use crate::mdp::{Policy, StateId};
use crate::rational::{format, int, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    /// Any mismatch fails the check.
    #[default]
    Strict,
    /// Mismatches are listed but the check passes.
    Report,
}

/// The first violation found by a check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iteration: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    fn compare(iteration: usize, state: impl ToString, lhs: &Rational, rhs: &Rational) -> Self {
        Witness {
            iteration: Some(iteration),
            state: Some(state.to_string()),
            lhs: Some(format(lhs)),
            rhs: Some(format(rhs)),
            detail: None,
        }
    }

    fn note(detail: impl Into<String>) -> Self {
        Witness {
            detail: Some(detail.into()),
            ..Witness::default()
        }
    }

    fn at(mut self, iteration: usize) -> Self {
        self.iteration = Some(iteration);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<PhaseMismatch>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            pass: true,
            checked: 0,
            witness: None,
            mismatches: Vec::new(),
        }
    }

    /// Records one comparison; the first failure becomes the witness.
    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
    }

    /// A check that never got to compare anything has not established anything.
    fn require_coverage(mut self) -> Self {
        if self.checked == 0 && self.pass {
            self.pass = false;
            self.witness = Some(Witness::note("no policy in the trace was eligible for this check"));
        }
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseMismatch {
    pub iteration: usize,
    pub configuration: u64,
    pub phase: String,
    /// States whose action differs from the oracle, by name.
    pub states: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilestoneReport {
    pub milestones: Vec<(usize, Configuration)>,
    pub missing: Vec<Configuration>,
    pub order_ok: bool,
    pub iteration_count: usize,
}

impl MilestoneReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn meets_bound(&self, n: usize) -> bool {
        self.iteration_count as u128 >= 1u128 << n
    }
}

/// A trace on a hard instance together with the total-reward values of each
/// of its policies and the phase each policy was identified with.
pub struct Audit<'a> {
    pub instance: &'a HardInstance,
    pub trace: &'a TraceRecord,
    values: Vec<ValueVector>,
    milestones: MilestoneReport,
    labels: Vec<Option<(Configuration, PhaseTag)>>,
}

impl<'a> Audit<'a> {
    /// Evaluates every policy of `trace` under the total-reward criterion,
    /// whatever criterion produced the trace.
    pub fn new(instance: &'a HardInstance, trace: &'a TraceRecord) -> Result<Self> {
        let values = trace
            .iterations
            .iter()
            .map(|rec| match (&rec.values, trace.criterion) {
                (Some(ValueReport::Total(v)), Criterion::TotalReward) => Ok(v.clone()),
                _ => total_reward_values(&instance.mdp, &rec.policy),
            })
            .collect::<Result<Vec<_>>>()?;
        let milestones = find_milestones(instance, trace)?;
        let labels = label_phases(instance, trace, &milestones)?;
        Ok(Audit {
            instance,
            trace,
            values,
            milestones,
            labels,
        })
    }

    pub fn milestones(&self) -> &MilestoneReport {
        &self.milestones
    }

    pub fn values(&self) -> &[ValueVector] {
        &self.values
    }

    /// Iterations whose policy equals the oracle policy of the phase the
    /// counter is predicted to be in.
    pub fn labelled(&self) -> impl Iterator<Item = (usize, &Configuration, PhaseTag)> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(k, l)| l.as_ref().map(|(b, p)| (k, b, *p)))
    }

    fn sequence_policies(&self) -> impl Iterator<Item = (usize, &Configuration, usize)> {
        self.labelled().filter_map(|(k, b, p)| match p {
            PhaseTag::Seq(j) => Some((k, b, j)),
            _ => None,
        })
    }

    fn val(&self, k: usize, s: NamedState) -> &Rational {
        &self.values[k][self.instance.id(s)]
    }

    pub fn counter_checks(&self) -> CheckReport {
        let m = &self.milestones;
        let n = self.instance.n();
        let mut start = Check::new("starts_at_initial_policy");
        let init = self.instance.initial_policy();
        start.expect(
            self.trace.iterations.first().is_some_and(|r| r.policy == init),
            || Witness::note("first policy of the trace is not the counter's initial policy").at(0),
        );
        let mut terminated = Check::new("terminated");
        terminated.expect(self.trace.terminated, || {
            Witness::note("trace stopped before reaching an optimal policy")
        });
        let mut complete = Check::new("milestones_complete");
        complete.expect(m.complete(), || {
            Witness::note(format!(
                "{} of {} configurations never reached, first {}",
                m.missing.len(),
                1u64 << n,
                m.missing[0]
            ))
        });
        let mut order = Check::new("milestones_in_counter_order");
        order.expect(m.order_ok, || {
            let (k, (it, b)) = m
                .milestones
                .iter()
                .enumerate()
                .find(|(k, (_, b))| b.as_int() != *k as u64)
                .expect("order_ok is false only with an out-of-order milestone");
            Witness::note(format!("milestone #{k} is {b}, expected integer {k}")).at(*it)
        });
        let mut bound = Check::new("iterations_at_least_2^n");
        bound.expect(m.meets_bound(n), || Witness {
            lhs: Some(m.iteration_count.to_string()),
            rhs: Some((1u128 << n).to_string()),
            ..Witness::default()
        });
        CheckReport {
            checks: vec![start, terminated, complete, order, bound],
        }
    }

    /// Compares each trace policy between consecutive milestones against the
    /// oracle for `Seq(B, 0..)`, `R1`, `R2`, `R3`.
    pub fn phase_check(&self, strictness: Strictness) -> Check {
        let mut check = Check::new("phase_oracle");
        let mut mismatches = Vec::new();
        let ms = &self.milestones.milestones;
        let last = self.trace.iterations.len();
        for (idx, &(start, b)) in ms.iter().enumerate() {
            let expected = phases(&b);
            let end = ms.get(idx + 1).map_or(last, |&(it, _)| it);
            if end - start == 1 && !b.is_full() {
                check.expect(false, || {
                    Witness::note(format!("milestone {b} is directly followed by the next milestone"))
                        .at(start)
                });
            }
            let is_final_segment = idx + 1 == ms.len();
            let complete_segment = !is_final_segment || self.trace.terminated;
            if complete_segment && end - start != expected.len() {
                mismatches.push(PhaseMismatch {
                    iteration: start,
                    configuration: b.as_int(),
                    phase: format!("segment of length {} (expected {})", end - start, expected.len()),
                    states: Vec::new(),
                });
            }
            for (t, &phase) in expected.iter().enumerate() {
                let k = start + t;
                if k >= end {
                    break;
                }
                let oracle = self
                    .instance
                    .oracle_policy(&b, phase)
                    .expect("phases() only yields valid phases");
                let got = &self.trace.iterations[k].policy;
                check.checked += 1;
                if *got != oracle {
                    mismatches.push(PhaseMismatch {
                        iteration: k,
                        configuration: b.as_int(),
                        phase: phase.to_string(),
                        states: self.differing_states(got, &oracle),
                    });
                }
            }
        }
        if ms.is_empty() {
            check.expect(false, || Witness::note("no milestone found; nothing to align"));
        }
        if !mismatches.is_empty() && check.pass {
            let first = &mismatches[0];
            check.witness = Some(Witness {
                iteration: Some(first.iteration),
                detail: Some(format!("{} mismatching policies", mismatches.len())),
                ..Witness::default()
            });
            check.pass = strictness == Strictness::Report;
        }
        check.mismatches = mismatches;
        check
    }

    fn differing_states(&self, a: &Policy, b: &Policy) -> Vec<String> {
        self.instance
            .mdp
            .states()
            .filter(|&s| a.choice(s) != b.choice(s))
            .map(|s| self.instance.name(s).to_string())
            .collect()
    }

    /// The value inequalities the counter relies on, at every identified
    /// `Sequence(B)` policy (and the reset threshold at every `R2` policy).
    pub fn assumption_checks(&self) -> CheckReport {
        use NamedState::*;
        let h = self.instance;
        let n = h.n();
        let ni = n as i64;
        let scale = int(10 * ni + 4);
        let g_cap = h.params.hitting_time();

        let mut b_pos = Check::new("bit_value_positive");
        let mut g_cap_check = Check::new("g_value_at_most_hitting_time");
        let mut y_x = Check::new("y_above_x");
        let mut f_edge = Check::new("f_shortcut_not_switchable");
        let mut set_margin = Check::new("set_bit_above_y_margin");
        let mut bit_appeal = Check::new("bit_action_appeal_below_value_plus_one");
        let mut c_gap = Check::new("c_gap_bounded");
        let mut c_mono = Check::new("c_nonincreasing_over_set_bits");
        let mut c_strict = Check::new("c_strictly_decreasing_over_set_bits");
        let mut c_next = Check::new("next_set_c_dominates_higher");
        let mut f_below = Check::new("open_f_below_next_c");
        let mut f_max = Check::new("lowest_set_f_maximal");

        for (k, b, _) in self.sequence_policies() {
            let v = |s| self.val(k, s);
            let policy = &self.trace.iterations[k].policy;
            for i in 1..=n {
                b_pos.expect(*v(Bit(i)) > int(0), || Witness::compare(k, Bit(i), v(Bit(i)), &int(0)));
                g_cap_check.expect(*v(G(i)) <= g_cap, || Witness::compare(k, G(i), v(G(i)), &g_cap));
            }
            y_x.expect(v(Y) > v(X), || Witness::compare(k, Y, v(Y), v(X)));

            for i in 1..=n {
                let bi = h.id(Bit(i));
                for j in i + 1..=n {
                    let a = h.action_to(Bit(i), F(j)).expect("edge b_i -> f_j for j > i");
                    let ap = appeal(&h.mdp, &self.values[k], bi, a).expect("valid action");
                    f_edge.expect(ap < *v(Bit(i)), || {
                        let mut w = Witness::compare(k, Bit(i), &ap, v(Bit(i)));
                        w.detail = Some(format!("action to f{j}"));
                        w
                    });
                }
                if b.contains(i) {
                    let rhs = v(Y) + int(6 * ni + 1);
                    set_margin.expect(*v(Bit(i)) > rhs, || Witness::compare(k, Bit(i), v(Bit(i)), &rhs));
                }
                if policy.choice(bi) != h.bit_action(i) {
                    let ap = appeal(&h.mdp, &self.values[k], bi, h.bit_action(i)).expect("valid action");
                    let rhs = v(Bit(i)) + int(1);
                    bit_appeal.expect(ap < rhs, || Witness::compare(k, Bit(i), &ap, &rhs));
                }
            }

            let set: Vec<usize> = b.bits().collect();
            for (x, &i) in set.iter().enumerate() {
                for &j in &set[x..] {
                    c_mono.expect(v(C(i)) >= v(C(j)), || Witness::compare(k, C(i), v(C(i)), v(C(j))));
                    if j > i {
                        let rhs = v(C(j)) + &scale * (pow2i(j - 1) - pow2i(i - 1));
                        c_gap.expect(*v(C(i)) <= rhs, || Witness::compare(k, C(i), v(C(i)), &rhs));
                    }
                }
            }
            let mut with_sink = set.clone();
            with_sink.push(n + 1);
            for (x, &i) in with_sink.iter().enumerate() {
                for &j in &with_sink[x + 1..] {
                    c_strict.expect(v(C(i)) > v(C(j)), || Witness::compare(k, C(i), v(C(i)), v(C(j))));
                }
            }
            for m in 0..=n {
                let top = b.next_above(m);
                for j in (m + 1..=n + 1).filter(|&j| j != top) {
                    c_next.expect(v(C(top)) > v(C(j)), || Witness::compare(k, C(top), v(C(top)), v(C(j))));
                }
            }
            for i in (1..=n).filter(|&i| !b.contains(i)) {
                let lhs = v(F(i)) + int(4 * ni + 1);
                let c = C(b.next_above(i));
                f_below.expect(lhs < *v(c), || Witness::compare(k, F(i), &lhs, v(c)));
            }
            if let Some(lo) = b.bits().next() {
                for j in (1..=n).filter(|&j| j != lo) {
                    f_max.expect(v(F(lo)) > v(F(j)), || Witness::compare(k, F(lo), v(F(lo)), v(F(j))));
                }
            }
        }

        let mut reset = Check::new("reset_x_above_y_margin");
        for (k, _, phase) in self.labelled() {
            if phase == PhaseTag::R2 {
                let lhs = self.val(k, Y) + int(6 * ni + 1);
                let x = self.val(k, X);
                reset.expect(lhs < *x, || Witness::compare(k, Y, &lhs, x));
            }
        }

        // the ordering checks can be vacuous on small instances, so only the
        // always-applicable ones demand coverage
        let mut checks = vec![
            b_pos.require_coverage(),
            g_cap_check.require_coverage(),
            y_x.require_coverage(),
            f_edge,
            set_margin,
            bit_appeal,
            c_gap,
            c_mono,
            c_strict,
            c_next,
            f_below,
            f_max,
        ];
        checks.push(if self.milestones.milestones.len() > 1 { reset.require_coverage() } else { reset });
        CheckReport { checks }
    }

    /// Closed forms: `Val(c_i)` at every `Sequence(B)` policy, `Val(b_i) =
    /// Val(g_i)` whenever `b_i` plays `a_i`, and the sink at 0 throughout.
    pub fn closed_form_checks(&self) -> CheckReport {
        use NamedState::*;
        let h = self.instance;
        let n = h.n();
        let mut c_form = Check::new("c_closed_form");
        for (k, b, _) in self.sequence_policies() {
            for i in 1..=n {
                let want = closed_form_c_value(&h.params, b, i);
                let got = self.val(k, C(i));
                c_form.expect(*got == want, || Witness::compare(k, C(i), got, &want));
            }
        }
        let mut gadget = Check::new("bit_value_equals_g_when_set");
        let mut sink = Check::new("sink_value_zero");
        for (k, rec) in self.trace.iterations.iter().enumerate() {
            for i in 1..=n {
                if rec.policy.choice(h.id(Bit(i))) == h.bit_action(i) {
                    let (lb, lg) = (self.val(k, Bit(i)), self.val(k, G(i)));
                    gadget.expect(lb == lg, || Witness::compare(k, Bit(i), lb, lg));
                }
            }
            let s = &self.values[k][h.sink()];
            sink.expect(*s == int(0), || Witness::compare(k, C(n + 1), s, &int(0)));
        }
        CheckReport {
            checks: vec![c_form.require_coverage(), gadget, sink.require_coverage()],
        }
    }

    /// Each step raises the value of some state and lowers none.
    pub fn monotonicity_check(&self) -> Check {
        let mut check = Check::new("values_monotone");
        for k in 1..self.values.len() {
            let (prev, next) = (&self.values[k - 1], &self.values[k]);
            let drop = self
                .instance
                .mdp
                .states()
                .find(|&s| next[s] < prev[s]);
            check.expect(drop.is_none(), || {
                let s = drop.expect("checked");
                Witness::compare(k, self.instance.name(s), &next[s], &prev[s])
            });
            let rises = self.instance.mdp.states().any(|s| next[s] > prev[s]);
            check.expect(rises, || Witness::note("no state improved").at(k));
        }
        check
    }

    /// Values stored in the trace agree with a fresh evaluation.
    pub fn recorded_values_check(&self) -> Check {
        let mut check = Check::new("recorded_values_match");
        for (k, rec) in self.trace.iterations.iter().enumerate() {
            let Some(recorded) = &rec.values else { continue };
            let fresh = match self.trace.criterion {
                Criterion::TotalReward => total_reward_values(&self.instance.mdp, &rec.policy)
                    .map(ValueReport::Total),
                Criterion::AverageReward => crate::evaluation::gain_bias_values(&self.instance.mdp, &rec.policy)
                    .map(ValueReport::Average),
            };
            let ok = fresh.as_ref().is_ok_and(|f| f == recorded);
            check.expect(ok, || Witness::note("recorded values differ from recomputed values").at(k));
        }
        check
    }

    pub fn tier1(&self) -> CheckReport {
        let mut report = self.counter_checks();
        report.extend(self.assumption_checks());
        report.extend(self.closed_form_checks());
        report.checks.push(self.monotonicity_check());
        report.checks.push(self.recorded_values_check());
        report
    }

    pub fn tier2(&self) -> CheckReport {
        let mut report = self.tier1();
        report.checks.push(self.phase_check(Strictness::Report));
        report
    }
}

fn pow2i(k: usize) -> Rational {
    crate::rational::pow2(k as u32)
}

fn find_milestones(instance: &HardInstance, trace: &TraceRecord) -> Result<MilestoneReport> {
    let n = instance.n();
    let count = 1u64 << n;
    let mut oracle: HashMap<Vec<usize>, Configuration> = HashMap::with_capacity(count as usize);
    for v in 0..count {
        let b = Configuration::from_int(n, v)?;
        oracle.insert(instance.sequence_policy(&b, 0)?.choices().to_vec(), b);
    }
    let milestones: Vec<(usize, Configuration)> = trace
        .iterations
        .iter()
        .enumerate()
        .filter_map(|(k, r)| oracle.get(r.policy.choices()).map(|b| (k, *b)))
        .collect();
    let mut seen = vec![false; count as usize];
    for (_, b) in &milestones {
        seen[b.as_int() as usize] = true;
    }
    let missing = (0..count)
        .filter(|&v| !seen[v as usize])
        .map(|v| Configuration::from_int(n, v))
        .collect::<Result<Vec<_>>>()?;
    let order_ok = milestones
        .iter()
        .enumerate()
        .all(|(k, (_, b))| b.as_int() == k as u64);
    Ok(MilestoneReport {
        milestones,
        missing,
        order_ok,
        iteration_count: trace.iteration_count(),
    })
}

fn label_phases(
    instance: &HardInstance,
    trace: &TraceRecord,
    milestones: &MilestoneReport,
) -> Result<Vec<Option<(Configuration, PhaseTag)>>> {
    let mut labels = vec![None; trace.iterations.len()];
    for &(start, b) in &milestones.milestones {
        for (t, phase) in phases(&b).into_iter().enumerate() {
            let k = start + t;
            if k >= labels.len() {
                break;
            }
            if labels[k].is_none() && trace.iterations[k].policy == instance.oracle_policy(&b, phase)? {
                labels[k] = Some((b, phase));
            }
        }
    }
    Ok(labels)
}

pub fn verify_counter(instance: &HardInstance, trace: &TraceRecord) -> Result<MilestoneReport> {
    find_milestones(instance, trace)
}

pub fn verify_phases(instance: &HardInstance, trace: &TraceRecord, strictness: Strictness) -> Result<CheckReport> {
    let audit = Audit::new(instance, trace)?;
    Ok(CheckReport {
        checks: vec![audit.phase_check(strictness)],
    })
}

pub fn verify_assumptions(instance: &HardInstance, trace: &TraceRecord) -> Result<CheckReport> {
    Ok(Audit::new(instance, trace)?.assumption_checks())
}

pub fn verify_closed_forms(instance: &HardInstance, trace: &TraceRecord) -> Result<CheckReport> {
    Ok(Audit::new(instance, trace)?.closed_form_checks())
}

/// Runs the instance under both criteria from the counter's initial policy
/// and compares them iteration by iteration.
pub fn verify_criterion_equivalence(instance: &HardInstance) -> Result<CheckReport> {
    let budget = RunConfig::instance_budget(instance.n());
    let config = |c| {
        RunConfig::new(c)
            .with_max_iterations(budget)
            .with_tie_mode(TieMode::StrictError)
            .with_record_values(true)
    };
    let init = instance.initial_policy();
    let total = run(&instance.mdp, &init, &config(Criterion::TotalReward))?;
    let avg = run(&instance.mdp, &init, &config(Criterion::AverageReward))?;
    Ok(compare_criteria(instance, &total, &avg))
}

pub fn compare_criteria(instance: &HardInstance, total: &TraceRecord, avg: &TraceRecord) -> CheckReport {
    let mut length = Check::new("criteria_same_length");
    length.expect(total.iterations.len() == avg.iterations.len() && total.terminated == avg.terminated, || Witness {
        lhs: Some(total.iteration_count().to_string()),
        rhs: Some(avg.iteration_count().to_string()),
        ..Witness::default()
    });
    let mut switches = Check::new("criteria_same_switches");
    let mut gain = Check::new("gain_zero");
    let mut bias = Check::new("bias_equals_total_value");
    for (k, (t, a)) in total.iterations.iter().zip(&avg.iterations).enumerate() {
        let key = |r: &crate::iteration::IterationRecord| -> Vec<(StateId, usize)> {
            r.switches.iter().map(|d| (d.state, d.to_action)).collect()
        };
        switches.expect(t.policy == a.policy && key(t) == key(a), || {
            Witness::note("switch sets differ").at(k)
        });
        let (Some(ValueReport::Total(tv)), Some(ValueReport::Average(gb))) = (&t.values, &a.values) else {
            gain.expect(false, || Witness::note("trace lacks recorded values").at(k));
            continue;
        };
        for s in instance.mdp.states() {
            gain.expect(gb.gain[s] == int(0), || {
                Witness::compare(k, instance.name(s), &gb.gain[s], &int(0))
            });
            bias.expect(gb.bias[s] == tv[s], || {
                Witness::compare(k, instance.name(s), &gb.bias[s], &tv[s])
            });
        }
    }
    CheckReport {
        checks: vec![length, switches, gain, bias],
    }
}

/// Report file layout.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub iterations: usize,
    pub milestones: Vec<(usize, u64)>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(audit: &Audit<'_>, report: CheckReport) -> Self {
        VerifyReport {
            n: audit.instance.n(),
            iterations: audit.trace.iteration_count(),
            milestones: audit
                .milestones
                .milestones
                .iter()
                .map(|(k, b)| (*k, b.as_int()))
                .collect(),
            checks: report.checks,
        }
    }
}
