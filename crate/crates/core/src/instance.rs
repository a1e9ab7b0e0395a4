//! The exponential lower-bound family for greedy policy iteration.
//!
//! Instance `n` simulates an `n`-bit binary counter. Each bit `i` is a gadget
//! of five states `b_i, f_i, g_i, r_i, c_i`; bit `i` is set when `b_i` takes
//! its probabilistic action `a_i`. A deceleration lane `d_0 .. d_{2n}` with
//! the two escape states `x` and `y` slows each bit down enough that the
//! counter visits every configuration before policy iteration terminates.
//!
//! Besides the MDP itself this module provides the starting policy, the
//! predicted policy for every phase of the run, and closed forms for the
//! values of the `c_i` states.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mdp::{Action, Mdp, Policy, StateId};
use crate::rational::{int, one, pow2, Rational};

/// Largest supported number of bits. Configurations are stored as `u64`
/// bitmasks; far smaller `n` already makes a full run impractical.
pub const MAX_BITS: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceParams {
    pub n: usize,
}

impl InstanceParams {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if n > MAX_BITS {
            return Err(Error::InvalidParams(format!("n must be at most {MAX_BITS}")));
        }
        Ok(InstanceParams { n })
    }

    pub fn n_states(&self) -> usize {
        7 * self.n + 4
    }

    /// `(10n + 4) 2^n`, the expected number of steps `a_i` needs to reach `g_i`.
    pub fn hitting_time(&self) -> Rational {
        int(10 * self.n as i64 + 4) * pow2(self.n as u32)
    }

    /// Probability with which `a_i` leaves `b_i`.
    pub fn rho(&self) -> Rational {
        one() / self.hitting_time()
    }

    fn scale(&self) -> Rational {
        int(10 * self.n as i64 + 4)
    }

    fn big(&self) -> i64 {
        4 * self.n as i64 + 1
    }
}

/// Symbolic role of a state. `C(n + 1)` is the sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedState {
    D(usize),
    Bit(usize),
    F(usize),
    G(usize),
    R(usize),
    C(usize),
    X,
    Y,
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::D(k) => write!(f, "d{k}"),
            NamedState::Bit(i) => write!(f, "b{i}"),
            NamedState::F(i) => write!(f, "f{i}"),
            NamedState::G(i) => write!(f, "g{i}"),
            NamedState::R(i) => write!(f, "r{i}"),
            NamedState::C(i) => write!(f, "c{i}"),
            NamedState::X => f.write_str("x"),
            NamedState::Y => f.write_str("y"),
        }
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("unknown state name {s:?}"));
        match s {
            "x" => return Ok(NamedState::X),
            "y" => return Ok(NamedState::Y),
            _ => {}
        }
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        if tail.is_empty() || !tail.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let k: usize = tail.parse().map_err(|_| bad())?;
        Ok(match head {
            "d" => NamedState::D(k),
            "b" => NamedState::Bit(k),
            "f" => NamedState::F(k),
            "g" => NamedState::G(k),
            "r" => NamedState::R(k),
            "c" => NamedState::C(k),
            _ => return Err(bad()),
        })
    }
}

/// A set of counter bits, read as the integer `sum of 2^(i-1)` over set bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    n: usize,
    mask: u64,
}

impl Configuration {
    pub fn empty(n: usize) -> Self {
        Configuration { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        Configuration { n, mask: (1u64 << n) - 1 }
    }

    pub fn from_bits(n: usize, bits: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0;
        for i in bits {
            if i == 0 || i > n {
                return Err(Error::InvalidParams(format!("bit {i} outside 1..={n}")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Configuration { n, mask })
    }

    pub fn from_int(n: usize, value: u64) -> Result<Self> {
        if n > MAX_BITS || value >> n != 0 {
            return Err(Error::InvalidParams(format!("{value} is not an {n}-bit configuration")));
        }
        Ok(Configuration { n, mask: value })
    }

    pub fn as_int(&self) -> u64 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=self.n).contains(&i) && self.mask >> (i - 1) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.n)
    }

    pub fn bits(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|&i| self.contains(i))
    }

    /// `min(B ∪ {n + 1})`.
    pub fn min_or_sink(&self) -> usize {
        self.bits().next().unwrap_or(self.n + 1)
    }

    /// `min(B^{>i} ∪ {n + 1})`.
    pub fn next_above(&self, i: usize) -> usize {
        self.bits().find(|&j| j > i).unwrap_or(self.n + 1)
    }

    /// The least unset bit, if any.
    pub fn min_missing(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.contains(i))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.bits().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// `B' = B ∪ {i} \ {1, .., i-1}` with `i` the least unset bit, i.e. `B + 1`.
pub fn counter_successor(b: &Configuration) -> Result<Configuration> {
    if b.is_full() {
        return Err(Error::CounterOverflow);
    }
    Configuration::from_int(b.n, b.mask + 1)
}

/// Position of a policy inside the counter run for one configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseTag {
    /// `π_j^B`, the `j`-th lane step.
    Seq(usize),
    R1,
    R2,
    R3,
}

impl fmt::Display for PhaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseTag::Seq(j) => write!(f, "seq{j}"),
            PhaseTag::R1 => f.write_str("r1"),
            PhaseTag::R2 => f.write_str("r2"),
            PhaseTag::R3 => f.write_str("r3"),
        }
    }
}

/// Largest lane index `j` for which `π_j^B` exists: `2i + 1` for the least
/// unset bit `i`, or `2n` once every bit is set.
pub fn last_seq_index(b: &Configuration) -> usize {
    match b.min_missing() {
        Some(i) => 2 * i + 1,
        None => 2 * b.n,
    }
}

/// The phases between milestone `B` and milestone `B + 1`, in run order.
pub fn phases(b: &Configuration) -> Vec<PhaseTag> {
    let mut out: Vec<PhaseTag> = (0..=last_seq_index(b)).map(PhaseTag::Seq).collect();
    if !b.is_full() {
        out.extend([PhaseTag::R1, PhaseTag::R2, PhaseTag::R3]);
    }
    out
}

/// `Val(c_i)` for every policy of `Sequence(B)`: the sum of
/// `(10n + 4)(2^j - 2^{j-1})` over set bits `j >= i`, minus one if `i` is unset.
pub fn closed_form_c_value(params: &InstanceParams, b: &Configuration, i: usize) -> Rational {
    let sum: Rational = b
        .bits()
        .filter(|&j| j >= i)
        .map(|j| params.scale() * (pow2(j as u32) - pow2(j as u32 - 1)))
        .sum();
    if b.contains(i) {
        sum
    } else {
        sum - one()
    }
}

/// A generated instance together with its name map.
#[derive(Clone, Debug)]
pub struct HardInstance {
    pub params: InstanceParams,
    pub mdp: Mdp,
    names: Vec<NamedState>,
    ids: HashMap<NamedState, StateId>,
}

impl HardInstance {
    pub fn build(params: InstanceParams) -> Result<Self> {
        let params = InstanceParams::new(params.n)?;
        let n = params.n;

        let mut names = Vec::with_capacity(params.n_states());
        names.extend((0..=2 * n).map(NamedState::D));
        for i in 1..=n {
            names.extend([
                NamedState::Bit(i),
                NamedState::F(i),
                NamedState::G(i),
                NamedState::R(i),
                NamedState::C(i),
            ]);
        }
        names.extend([NamedState::X, NamedState::Y, NamedState::C(n + 1)]);
        let ids: HashMap<NamedState, StateId> =
            names.iter().enumerate().map(|(k, &s)| (s, StateId(k))).collect();

        let to = |t: NamedState, r: Rational| Action::deterministic(ids[&t], r).with_label(t.to_string());
        let big = params.big();
        let scale = params.scale();
        let rho = params.rho();

        let mut actions: Vec<Vec<Action>> = vec![Vec::new(); names.len()];
        for (k, &s) in names.iter().enumerate() {
            let acts = &mut actions[k];
            match s {
                NamedState::D(0) => {
                    acts.push(to(NamedState::Y, int(big)));
                    acts.push(to(NamedState::X, int(big)));
                }
                NamedState::D(k) => {
                    acts.push(to(NamedState::Y, int(0)));
                    acts.push(to(NamedState::X, int(0)));
                    acts.push(to(NamedState::D(k - 1), int(-1)));
                }
                NamedState::Bit(i) => {
                    acts.push(
                        Action::new(
                            int(0),
                            vec![(ids[&s], one() - &rho), (ids[&NamedState::G(i)], rho.clone())],
                        )
                        .with_label(format!("a{i}")),
                    );
                    for k in 1..=2 * i {
                        acts.push(to(NamedState::D(k), int(2 * k as i64)));
                    }
                    acts.push(to(NamedState::Y, int(1)));
                    acts.push(to(NamedState::X, int(0)));
                    for j in i + 1..=n {
                        acts.push(to(NamedState::F(j), int(big)));
                    }
                }
                NamedState::F(i) => {
                    let r = -(&scale * pow2(i as u32 - 1)) - int(4 * n as i64);
                    acts.push(to(NamedState::Bit(i), r));
                }
                NamedState::G(i) => acts.push(to(NamedState::R(i), &scale * pow2(i as u32))),
                NamedState::R(i) => {
                    for j in i + 1..=n + 1 {
                        acts.push(to(NamedState::C(j), int(-1)));
                    }
                }
                NamedState::C(i) if i == n + 1 => acts.push(to(s, int(0))),
                NamedState::C(i) => {
                    acts.push(to(NamedState::F(i), int(big)));
                    acts.push(to(NamedState::R(i), int(0)));
                }
                NamedState::Y => {
                    for i in 1..=n + 1 {
                        acts.push(to(NamedState::C(i), int(0)));
                    }
                }
                NamedState::X => {
                    for i in 1..=n {
                        acts.push(to(NamedState::F(i), int(0)));
                    }
                    acts.push(to(NamedState::C(n + 1), int(-1)));
                }
            }
        }

        let mdp = Mdp::new(actions)?;
        Ok(HardInstance { params, mdp, names, ids })
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn id(&self, s: NamedState) -> StateId {
        self.try_id(s).unwrap_or_else(|| panic!("{s} is not a state of instance n={}", self.n()))
    }

    pub fn try_id(&self, s: NamedState) -> Option<StateId> {
        self.ids.get(&s).copied()
    }

    pub fn name(&self, s: StateId) -> NamedState {
        self.names[s.0]
    }

    pub fn names(&self) -> &[NamedState] {
        &self.names
    }

    pub fn sink(&self) -> StateId {
        self.id(NamedState::C(self.n() + 1))
    }

    /// Index of the action at `from` labelled `label` (a target name, or
    /// `a{i}` for the probabilistic action at `b_i`).
    pub fn action_labelled(&self, from: NamedState, label: &str) -> Option<usize> {
        let s = self.try_id(from)?;
        self.mdp
            .actions(s)
            .iter()
            .position(|a| a.label.as_deref() == Some(label))
    }

    /// Index of the deterministic action `from -> to`.
    pub fn action_to(&self, from: NamedState, to: NamedState) -> Option<usize> {
        self.action_labelled(from, &to.to_string())
    }

    /// Index of `a_i` at `b_i`.
    pub fn bit_action(&self, i: usize) -> usize {
        self.action_labelled(NamedState::Bit(i), &format!("a{i}"))
            .expect("every bit state has its probabilistic action")
    }

    /// `{"0": "d0", ...}` for serialization.
    pub fn name_map(&self) -> BTreeMap<usize, String> {
        self.names.iter().enumerate().map(|(k, s)| (k, s.to_string())).collect()
    }

    /// `π_0^∅`, the policy the counter starts from.
    pub fn initial_policy(&self) -> Policy {
        self.assemble(|s| self.seq_choice(&Configuration::empty(self.n()), 0, s))
    }

    pub fn sequence_policy(&self, b: &Configuration, j: usize) -> Result<Policy> {
        self.oracle_policy(b, PhaseTag::Seq(j))
    }

    /// The policy the counter run is predicted to visit at `phase` of
    /// configuration `b`.
    pub fn oracle_policy(&self, b: &Configuration, phase: PhaseTag) -> Result<Policy> {
        if b.n() != self.n() {
            return Err(Error::InvalidPhase(format!(
                "configuration has {} bits, instance has {}",
                b.n(),
                self.n()
            )));
        }
        match phase {
            PhaseTag::Seq(j) => {
                if j > last_seq_index(b) {
                    return Err(Error::InvalidPhase(format!(
                        "seq{j} is past the last lane step {} of {b}",
                        last_seq_index(b)
                    )));
                }
                Ok(self.assemble(|s| self.seq_choice(b, j, s)))
            }
            PhaseTag::R1 | PhaseTag::R2 | PhaseTag::R3 => {
                let i = b.min_missing().ok_or_else(|| {
                    Error::InvalidPhase(format!("{phase} does not exist for the full configuration"))
                })?;
                Ok(self.assemble(|s| self.reset_choice(b, i, phase, s)))
            }
        }
    }

    fn assemble(&self, choose: impl Fn(NamedState) -> Choice) -> Policy {
        let choices = self
            .names
            .iter()
            .map(|&s| match choose(s) {
                Choice::Bit => self.bit_action(match s {
                    NamedState::Bit(i) => i,
                    _ => unreachable!("only bit states choose a_i"),
                }),
                Choice::To(t) => self
                    .action_to(s, t)
                    .unwrap_or_else(|| panic!("oracle picked missing edge {s} -> {t}")),
            })
            .collect();
        Policy::new(&self.mdp, choices).expect("oracle choices are in range")
    }

    /// Choice at `s` in `π_j^B`. Also used with `j` past the last lane step
    /// as the base of the reset phases.
    fn seq_choice(&self, b: &Configuration, j: usize, s: NamedState) -> Choice {
        use NamedState::*;
        let n = self.n();
        match s {
            D(0) => Choice::To(Y),
            D(k) if k <= j.min(2 * n) => Choice::To(D(k - 1)),
            D(_) => Choice::To(Y),
            Bit(l) if b.contains(l) => Choice::Bit,
            Bit(l) => match j {
                0 => Choice::To(Y),
                1 => Choice::To(D(2 * l)),
                _ => Choice::To(D((j - 1).min(2 * l))),
            },
            F(l) => Choice::To(Bit(l)),
            G(l) => Choice::To(R(l)),
            R(l) => Choice::To(C(b.next_above(l))),
            C(l) if l == n + 1 => Choice::To(C(l)),
            C(l) if b.contains(l) => Choice::To(F(l)),
            C(l) => Choice::To(R(l)),
            Y => Choice::To(C(b.min_or_sink())),
            X if b.is_empty() => Choice::To(C(n + 1)),
            X => Choice::To(F(b.min_or_sink())),
        }
    }

    fn reset_choice(&self, b: &Configuration, i: usize, phase: PhaseTag, s: NamedState) -> Choice {
        use NamedState::*;
        if phase == PhaseTag::R1 {
            return match s {
                Bit(l) if l == i => Choice::Bit,
                _ => self.seq_choice(b, 2 * i + 2, s),
            };
        }
        // R2: bit i is set and c_i, x and every lower b_l point at f_i.
        let r2 = match s {
            Bit(l) if l == i => Choice::Bit,
            Bit(l) if l < i => Choice::To(F(i)),
            C(l) if l == i => Choice::To(F(i)),
            X => Choice::To(F(i)),
            _ => self.seq_choice(b, 2 * i + 3, s),
        };
        if phase == PhaseTag::R2 {
            return r2;
        }
        // R3: the lane and every open higher bit leave through x, while y
        // and the lower r_l move to c_i.
        match s {
            D(_) => Choice::To(X),
            Bit(l) if l > i && !b.contains(l) => Choice::To(X),
            Y => Choice::To(C(i)),
            R(l) if l < i => Choice::To(C(i)),
            _ => r2,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Choice {
    Bit,
    To(NamedState),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::chain_structure;
    use crate::evaluation::{appeal, total_reward_values};
    use crate::iteration::{run, switchable_actions, Criterion, RunConfig, TieMode};
    use crate::mdp::policies_equal;
    use crate::evaluation::ValueReport;

    fn inst(n: usize) -> HardInstance {
        HardInstance::build(InstanceParams::new(n).unwrap()).unwrap()
    }

    #[test]
    fn params_reject_zero() {
        assert!(matches!(InstanceParams::new(0), Err(Error::InvalidParams(_))));
        assert!(InstanceParams::new(1).is_ok());
    }

    #[test]
    fn state_and_action_counts() {
        for n in 1..=5 {
            let h = inst(n);
            // counted independently from the roles: 2n+1 lane, 5 per bit, x, y, sink
            assert_eq!(h.mdp.n_states(), (2 * n + 1) + 5 * n + 3);
            assert!(h.mdp.validate().is_ok());
            for i in 1..=n {
                let b = h.id(NamedState::Bit(i));
                assert_eq!(h.mdp.actions(b).len(), 1 + 2 * i + 2 + (n - i));
            }
            let names: std::collections::HashSet<String> =
                h.names().iter().map(|s| s.to_string()).collect();
            assert_eq!(names.len(), h.mdp.n_states());
        }
        assert_eq!(inst(1).mdp.n_states(), 11);
    }

    #[test]
    fn hitting_time_of_bit_action() {
        let p = InstanceParams::new(3).unwrap();
        assert_eq!(one() / p.rho(), int(34 * 8));
        let h = inst(3);
        let a = &h.mdp.actions(h.id(NamedState::Bit(2)))[h.bit_action(2)];
        assert_eq!(a.transitions[1].1, p.rho());
        assert_eq!(&a.transitions[0].1 + &a.transitions[1].1, one());
    }

    #[test]
    fn names_round_trip() {
        let h = inst(3);
        for &s in h.names() {
            assert_eq!(s.to_string().parse::<NamedState>().unwrap(), s);
        }
        assert!("q1".parse::<NamedState>().is_err());
        assert!("b".parse::<NamedState>().is_err());
    }

    #[test]
    fn counter_arithmetic() {
        let e = Configuration::empty(3);
        let one_ = counter_successor(&e).unwrap();
        assert_eq!(one_, Configuration::from_bits(3, [1]).unwrap());
        assert_eq!(counter_successor(&one_).unwrap(), Configuration::from_bits(3, [2]).unwrap());
        let three = Configuration::from_bits(3, [1, 2]).unwrap();
        assert_eq!(three.as_int(), 3);
        assert_eq!(counter_successor(&three).unwrap().as_int(), 4);
        assert!(matches!(counter_successor(&Configuration::full(3)), Err(Error::CounterOverflow)));
        assert_eq!(three.to_string(), "{1,2}");
    }

    #[test]
    fn initial_policy_values() {
        for n in 1..=3 {
            let h = inst(n);
            let p = h.initial_policy();
            let v = total_reward_values(&h.mdp, &p).unwrap();
            assert_eq!(v[h.id(NamedState::X)], int(-1));
            assert_eq!(v[h.id(NamedState::Y)], int(0));
            for i in 1..=n {
                assert_eq!(v[h.id(NamedState::C(i))], int(-1));
            }
            let cs = chain_structure(&h.mdp, &p);
            assert_eq!(cs.recurrent_classes, vec![vec![h.sink()]]);
        }
        let h = inst(1);
        let x = h.id(NamedState::X);
        assert_eq!(h.initial_policy().choice(x), h.action_to(NamedState::X, NamedState::C(2)).unwrap());
    }

    #[test]
    fn initial_policy_is_oracle_seq0() {
        let h = inst(2);
        let o = h.oracle_policy(&Configuration::empty(2), PhaseTag::Seq(0)).unwrap();
        assert!(policies_equal(&o, &h.initial_policy()).unwrap());
    }

    #[test]
    fn only_first_lane_action_switchable_initially() {
        for n in 1..=4 {
            let h = inst(n);
            let p = h.initial_policy();
            let v = ValueReport::Total(total_reward_values(&h.mdp, &p).unwrap());
            let sw = switchable_actions(&h.mdp, &p, &v, Criterion::TotalReward).unwrap();
            for k in 1..=2 * n {
                let d = h.id(NamedState::D(k));
                let lane = h.action_to(NamedState::D(k), NamedState::D(k - 1)).unwrap();
                let found = sw[d.0].iter().any(|s| s.to_action == lane);
                assert_eq!(found, k == 1, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn c_value_spot_checks() {
        let p = InstanceParams::new(2).unwrap();
        let b1 = Configuration::from_bits(2, [1]).unwrap();
        assert_eq!(closed_form_c_value(&p, &b1, 1), int(24));
        assert_eq!(closed_form_c_value(&p, &b1, 2), int(-1));
        for i in 1..=2 {
            assert_eq!(closed_form_c_value(&p, &Configuration::empty(2), i), int(-1));
        }
        // geometric sum over the full configuration
        let p5 = InstanceParams::new(5).unwrap();
        assert_eq!(
            closed_form_c_value(&p5, &Configuration::full(5), 1),
            int(54) * (pow2(5) - one())
        );
        let single = Configuration::from_bits(5, [3]).unwrap();
        assert_eq!(closed_form_c_value(&p5, &single, 3), int(54 * 4));
    }

    #[test]
    fn evaluated_c_values_match_at_milestones() {
        let h = inst(2);
        for v in 0..4 {
            let b = Configuration::from_int(2, v).unwrap();
            let p = h.sequence_policy(&b, 0).unwrap();
            let vals = total_reward_values(&h.mdp, &p).unwrap();
            for i in 1..=2 {
                assert_eq!(vals[h.id(NamedState::C(i))], closed_form_c_value(&h.params, &b, i));
            }
        }
    }

    #[test]
    fn lane_appeals() {
        // π_j with open bits only: appeal(d_k, d_{k-1}) is Val(y) + 4n - k + 1
        // on the active prefix k <= j+1 and Val(y) - 1 beyond it
        let n = 3;
        let h = inst(n);
        let e = Configuration::empty(n);
        for j in 0..=3 {
            let p = h.sequence_policy(&e, j).unwrap();
            let v = total_reward_values(&h.mdp, &p).unwrap();
            let y = v[h.id(NamedState::Y)].clone();
            for k in 1..=2 * n {
                let a = h.action_to(NamedState::D(k), NamedState::D(k - 1)).unwrap();
                let got = appeal(&h.mdp, &v, h.id(NamedState::D(k)), a).unwrap();
                let want = if k <= j + 1 {
                    &y + int(4 * n as i64 - k as i64 + 1)
                } else {
                    &y - one()
                };
                assert_eq!(got, want, "j={j} k={k}");
            }
        }
    }

    #[test]
    fn bit_action_appeal_bound() {
        let h = inst(3);
        for v in 0..8 {
            let b = Configuration::from_int(3, v).unwrap();
            for j in 0..=last_seq_index(&b) {
                let p = h.sequence_policy(&b, j).unwrap();
                let vals = total_reward_values(&h.mdp, &p).unwrap();
                for i in (1..=3).filter(|&i| !b.contains(i)) {
                    let s = h.id(NamedState::Bit(i));
                    let ap = appeal(&h.mdp, &vals, s, h.bit_action(i)).unwrap();
                    assert!(ap < &vals[s] + one());
                }
            }
        }
    }

    #[test]
    fn switching_bit_matches_r1_shape() {
        let h = inst(1);
        let e = Configuration::empty(1);
        let seq3 = h.sequence_policy(&e, 3).unwrap();
        let b1 = h.id(NamedState::Bit(1));
        let switched = seq3.switch(&h.mdp, &[(b1, h.bit_action(1))]).unwrap();
        let r1 = h.oracle_policy(&e, PhaseTag::R1).unwrap();
        assert_eq!(switched.choice(b1), r1.choice(b1));
        // R1 differs from the base lane policy only at b_1 (lane steps past 2n are capped)
        let diff: Vec<usize> = (0..h.mdp.n_states())
            .filter(|&k| switched.choices()[k] != r1.choices()[k])
            .collect();
        assert!(diff.iter().all(|&k| matches!(h.name(StateId(k)), NamedState::D(_))));
    }

    #[test]
    fn invalid_phases() {
        let h = inst(2);
        let e = Configuration::empty(2);
        assert!(h.oracle_policy(&e, PhaseTag::Seq(4)).is_err());
        assert!(h.oracle_policy(&e, PhaseTag::Seq(3)).is_ok());
        let full = Configuration::full(2);
        assert!(h.oracle_policy(&full, PhaseTag::R1).is_err());
        assert!(h.oracle_policy(&full, PhaseTag::Seq(4)).is_ok());
        assert!(h.oracle_policy(&Configuration::empty(3), PhaseTag::Seq(0)).is_err());
    }

    #[test]
    fn small_run_reaches_all_bits_set() {
        let h = inst(1);
        let cfg = RunConfig::new(Criterion::TotalReward).with_tie_mode(TieMode::StrictError);
        let t = run(&h.mdp, &h.initial_policy(), &cfg).unwrap();
        assert!(t.terminated);
        assert!(t.iteration_count() >= 2);
        assert_eq!(t.final_policy.choice(h.id(NamedState::Bit(1))), h.bit_action(1));
    }
}
