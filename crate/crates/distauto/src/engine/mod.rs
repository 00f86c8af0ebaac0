//! Generic execution engine for distributed machines.
//!
//! A machine assigns one finite state per node and evolves it with
//! prioritized guarded rules: at every step each selected agent observes how
//! many neighbours are in each state (counts capped at the machine's bound
//! `beta`) and applies the first rule whose guard holds, staying silent when
//! none matches. Machines are either flat rule sets or products of two
//! machines running in lockstep on shared labels.

mod format;
mod run;
mod validate;

pub use format::{
    parse_machine, parse_state, parse_trace, render_trace, serialize_machine,
    verdict_line, ParsedTrace,
};
pub use run::{
    init_configuration, neighborhood_view, run_scheduled, run_synchronous,
    step, Configuration, CycleInfo, RunLimits, RunResult, Verdict,
};
pub use validate::validate_machine;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use std::sync::OnceLock;

use crate::graphs::{Alphabet, NodeLabel};

/// Interned token for tape symbols and Turing-machine state names.
pub type Sym = Arc<str>;

/// Movement annotation of a simulated tape head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeadMode {
    /// The head sits on this cell (`H`).
    Settled,
    /// The head is about to move one cell to the right (`H+1`).
    MoveRight,
    /// The head is about to move one cell to the left (`H-1`).
    MoveLeft,
}

impl HeadMode {
    pub fn offset(self) -> i64 {
        match self {
            HeadMode::Settled => 0,
            HeadMode::MoveRight => 1,
            HeadMode::MoveLeft => -1,
        }
    }

    pub fn moving(direction: i8) -> HeadMode {
        if direction >= 0 { HeadMode::MoveRight } else { HeadMode::MoveLeft }
    }
}

impl fmt::Display for HeadMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeadMode::Settled => write!(f, "H"),
            HeadMode::MoveRight => write!(f, "H+1"),
            HeadMode::MoveLeft => write!(f, "H-1"),
        }
    }
}

/// A machine state. The variants cover every state shape used by the
/// concrete constructions; products nest two states in a pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MachineState {
    /// Fault sink.
    Bot,
    /// Success sink.
    Done,
    /// "About to succeed" marker used by halting machines to drain a run.
    Intent,
    /// Line recognizer state: a numbering and a confirmation bit.
    Guess { numbering: u8, guess: u8 },
    /// Quasi-line recognizer state: a numbering and a stage in `{0,1,2}`.
    Stage { numbering: u8, stage: u8 },
    /// Uninitialized tape cell remembering its node label.
    RawCell { symbol: Sym, numbering: u8 },
    /// Initialized tape cell.
    Cell { symbol: Sym, numbering: u8 },
    /// Tape cell currently carrying the simulated head.
    Head { symbol: Sym, numbering: u8, tm_state: Sym, mode: HeadMode },
    /// Uninitialized snowball-fight participant (numbering, facing, ball).
    RawFight { numbering: u8, facing: i8, ball: u8 },
    /// Active snowball-fight participant.
    Fight { numbering: u8, facing: i8, ball: u8 },
    /// Product state.
    Pair(Box<MachineState>, Box<MachineState>),
}

impl MachineState {
    pub fn pair(a: MachineState, b: MachineState) -> MachineState {
        MachineState::Pair(Box::new(a), Box::new(b))
    }
}

fn facing_str(facing: i8) -> &'static str {
    if facing > 0 { "+1" } else { "-1" }
}

impl fmt::Display for MachineState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineState::Bot => write!(f, "bot"),
            MachineState::Done => write!(f, "ok"),
            MachineState::Intent => write!(f, "box"),
            MachineState::Guess { numbering, guess } => {
                write!(f, "guess({numbering},{guess})")
            }
            MachineState::Stage { numbering, stage } => {
                write!(f, "stage({numbering},{stage})")
            }
            MachineState::RawCell { symbol, numbering } => {
                write!(f, "rawcell({symbol},{numbering})")
            }
            MachineState::Cell { symbol, numbering } => {
                write!(f, "cell({symbol},{numbering})")
            }
            MachineState::Head { symbol, numbering, tm_state, mode } => {
                write!(f, "head({symbol},{numbering},{tm_state},{mode})")
            }
            MachineState::RawFight { numbering, facing, ball } => {
                write!(f, "rawsf({numbering},{},{ball})", facing_str(*facing))
            }
            MachineState::Fight { numbering, facing, ball } => {
                write!(f, "sf({numbering},{},{ball})", facing_str(*facing))
            }
            MachineState::Pair(a, b) => write!(f, "pair({a},{b})"),
        }
    }
}

/// A set of states matched disjunctively by a count.
pub type Pattern = Vec<MachineState>;

/// An atomic threshold test on the observed neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `count(pattern) >= threshold`.
    AtLeast(Pattern, u32),
    /// `count(pattern) == 0`.
    IsZero(Pattern),
}

/// A possibly negated atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { negated: false, atom }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { negated: true, atom }
    }
}

/// One prioritized rule: exact own-state match, a conjunction of literals
/// (empty means `true`) and the successor state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub own: MachineState,
    pub when: Vec<Literal>,
    pub next: MachineState,
}

/// A flat machine kernel: state inventory, initialization map, prioritized
/// rules and the accepting/rejecting partitions.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub states: Vec<MachineState>,
    pub init: BTreeMap<NodeLabel, MachineState>,
    pub rules: Vec<Rule>,
    pub accepting: BTreeSet<MachineState>,
    pub rejecting: BTreeSet<MachineState>,
    index: OnceLock<HashMap<MachineState, Vec<usize>>>,
}

impl RuleSet {
    pub fn new(
        states: Vec<MachineState>,
        init: BTreeMap<NodeLabel, MachineState>,
        rules: Vec<Rule>,
        accepting: BTreeSet<MachineState>,
        rejecting: BTreeSet<MachineState>,
    ) -> RuleSet {
        RuleSet { states, init, rules, accepting, rejecting, index: OnceLock::new() }
    }

    /// Indices of the rules owned by `state`, in priority order.
    pub fn rules_for(&self, state: &MachineState) -> &[usize] {
        let index = self.index.get_or_init(|| {
            let mut index: HashMap<MachineState, Vec<usize>> = HashMap::new();
            for (i, rule) in self.rules.iter().enumerate() {
                index.entry(rule.own.clone()).or_default().push(i);
            }
            index
        });
        index.get(state).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// How a product machine combines its two verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// Both components keep running; the pair accepts when both do.
    StableConsensus,
    /// For halting components: once the left component rejects, the pair
    /// freezes so the verdict stays stable.
    Halting,
}

/// The executable body of a machine.
#[derive(Clone, Debug)]
pub enum Kernel {
    Rules(RuleSet),
    Product {
        left: Box<DistributedMachine>,
        right: Box<DistributedMachine>,
        mode: ProductMode,
    },
}

/// Whether agents may count neighbours (`beta >= 2`) or only detect them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detection {
    /// `d`: beta = 1, only presence is observable.
    Existence,
    /// `D`: beta >= 2.
    Counting,
}

impl fmt::Display for Detection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Detection::Existence => write!(f, "d"),
            Detection::Counting => write!(f, "D"),
        }
    }
}

/// The acceptance discipline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// `a`: accepting and rejecting states are permanent (silent).
    Halting,
    /// `A`: a run accepts when all agents stay accepting forever.
    StableConsensus,
}

impl fmt::Display for Acceptance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Acceptance::Halting => write!(f, "a"),
            Acceptance::StableConsensus => write!(f, "A"),
        }
    }
}

/// A distributed machine: metadata plus an executable kernel.
#[derive(Clone, Debug)]
pub struct DistributedMachine {
    pub name: String,
    pub alphabet: Alphabet,
    pub beta: u8,
    pub detection: Detection,
    pub acceptance: Acceptance,
    pub kernel: Kernel,
}

/// Errors raised when initializing or combining machines.
#[derive(Debug, thiserror::Error)]
pub enum MachineError {
    #[error("machine `{machine}` has no initial state for label `{label}`")]
    UnknownLabel { machine: String, label: String },
    #[error(
        "machine `{machine}` uses the {expected} alphabet but the graph is \
         {found}"
    )]
    AlphabetMismatch { machine: String, expected: Alphabet, found: Alphabet },
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl DistributedMachine {
    /// The initial state of an agent on a node with the given label.
    pub fn init_state(
        &self,
        label: NodeLabel,
    ) -> Result<MachineState, MachineError> {
        match &self.kernel {
            Kernel::Rules(rules) => {
                rules.init.get(&label).cloned().ok_or_else(|| {
                    MachineError::UnknownLabel {
                        machine: self.name.clone(),
                        label: label.to_string(),
                    }
                })
            }
            Kernel::Product { left, right, .. } => Ok(MachineState::pair(
                left.init_state(label)?,
                right.init_state(label)?,
            )),
        }
    }

    pub fn is_accepting(&self, state: &MachineState) -> bool {
        match (&self.kernel, state) {
            (Kernel::Rules(rules), _) => rules.accepting.contains(state),
            (Kernel::Product { left, right, .. }, MachineState::Pair(a, b)) => {
                left.is_accepting(a) && right.is_accepting(b)
            }
            _ => false,
        }
    }

    pub fn is_rejecting(&self, state: &MachineState) -> bool {
        match (&self.kernel, state) {
            (Kernel::Rules(rules), _) => rules.rejecting.contains(state),
            (Kernel::Product { left, right, .. }, MachineState::Pair(a, b)) => {
                left.is_rejecting(a)
                    || (left.is_accepting(a) && right.is_rejecting(b))
            }
            _ => false,
        }
    }

    /// Apply the first matching rule, or stay silent.
    pub fn transition(
        &self,
        own: &MachineState,
        view: &NeighborhoodView,
    ) -> MachineState {
        match &self.kernel {
            Kernel::Rules(rules) => {
                for &i in rules.rules_for(own) {
                    let rule = &rules.rules[i];
                    if rule.when.iter().all(|lit| lit.holds(view)) {
                        return rule.next.clone();
                    }
                }
                own.clone()
            }
            Kernel::Product { left, right, mode } => {
                let MachineState::Pair(a, b) = own else {
                    return own.clone();
                };
                if *mode == ProductMode::Halting && left.is_rejecting(a) {
                    return own.clone();
                }
                MachineState::pair(
                    left.transition(a, &view.project(Side::Left)),
                    right.transition(b, &view.project(Side::Right)),
                )
            }
        }
    }

    /// All states of the machine, pairs included, in deterministic order.
    pub fn state_inventory(&self) -> Vec<MachineState> {
        match &self.kernel {
            Kernel::Rules(rules) => rules.states.clone(),
            Kernel::Product { left, right, .. } => {
                let mut out = Vec::new();
                for a in left.state_inventory() {
                    for b in right.state_inventory() {
                        out.push(MachineState::pair(a.clone(), b));
                    }
                }
                out
            }
        }
    }
}

/// Which component of a product a projection extracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The capped multiset of neighbour states an agent observes.
///
/// Views built from a graph cap every per-state count at `beta`; projections
/// of product views sum capped pair counts per component, so a projected
/// count may exceed `beta`. Guards only compare counts against small
/// thresholds, which keeps both readings consistent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeighborhoodView {
    counts: BTreeMap<MachineState, u32>,
}

impl NeighborhoodView {
    pub fn from_states<'a>(
        states: impl IntoIterator<Item = &'a MachineState>,
        beta: u8,
    ) -> NeighborhoodView {
        let mut counts: BTreeMap<MachineState, u32> = BTreeMap::new();
        for q in states {
            let c = counts.entry(q.clone()).or_insert(0);
            *c = (*c + 1).min(beta as u32);
        }
        NeighborhoodView { counts }
    }

    pub fn from_counts(
        counts: BTreeMap<MachineState, u32>,
    ) -> NeighborhoodView {
        let counts = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        NeighborhoodView { counts }
    }

    /// Number of neighbours in exactly this state.
    pub fn count_of(&self, q: &MachineState) -> u32 {
        self.counts.get(q).copied().unwrap_or(0)
    }

    /// Number of neighbours in any state of the pattern.
    pub fn count(&self, pattern: &[MachineState]) -> u32 {
        pattern.iter().map(|q| self.count_of(q)).sum()
    }

    /// True when no neighbour is observed at all.
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MachineState, u32)> {
        self.counts.iter().map(|(q, &c)| (q, c))
    }

    /// Component view of a product view: pair counts summed per component.
    pub fn project(&self, side: Side) -> NeighborhoodView {
        let mut counts: BTreeMap<MachineState, u32> = BTreeMap::new();
        for (q, c) in self.iter() {
            if let MachineState::Pair(a, b) = q {
                let component = match side {
                    Side::Left => a.as_ref().clone(),
                    Side::Right => b.as_ref().clone(),
                };
                *counts.entry(component).or_insert(0) += c;
            }
        }
        NeighborhoodView { counts }
    }
}

impl Atom {
    pub fn holds(&self, view: &NeighborhoodView) -> bool {
        match self {
            Atom::AtLeast(pattern, k) => view.count(pattern) >= *k,
            Atom::IsZero(pattern) => view.count(pattern) == 0,
        }
    }
}

impl Literal {
    pub fn holds(&self, view: &NeighborhoodView) -> bool {
        self.atom.holds(view) != self.negated
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn guess(n: u8, g: u8) -> MachineState {
        MachineState::Guess { numbering: n, guess: g }
    }

    #[test]
    fn view_caps_counts_at_beta() {
        let states = vec![guess(0, 0), guess(0, 0), guess(0, 0), guess(1, 0)];
        let v = NeighborhoodView::from_states(states.iter(), 2);
        assert_eq!(v.count_of(&guess(0, 0)), 2);
        assert_eq!(v.count_of(&guess(1, 0)), 1);
        assert_eq!(v.count(&[guess(0, 0), guess(1, 0)]), 3);
        assert!(!v.is_empty());
        assert!(NeighborhoodView::from_states([].iter(), 1).is_empty());
    }

    #[test]
    fn projection_sums_pair_counts() {
        let p = |a: MachineState, b: MachineState| MachineState::pair(a, b);
        let states = vec![
            p(guess(0, 0), MachineState::Bot),
            p(guess(0, 0), MachineState::Done),
            p(guess(1, 0), MachineState::Bot),
        ];
        let v = NeighborhoodView::from_states(states.iter(), 2);
        let left = v.project(Side::Left);
        assert_eq!(left.count_of(&guess(0, 0)), 2);
        assert_eq!(left.count_of(&guess(1, 0)), 1);
        let right = v.project(Side::Right);
        assert_eq!(right.count_of(&MachineState::Bot), 2);
        assert_eq!(right.count_of(&MachineState::Done), 1);
    }

    #[test]
    fn literal_evaluation() {
        let v = NeighborhoodView::from_states(
            [guess(2, 1), guess(2, 1)].iter(),
            2,
        );
        let pat = vec![guess(2, 1)];
        assert!(Literal::pos(Atom::AtLeast(pat.clone(), 2)).holds(&v));
        assert!(!Literal::pos(Atom::IsZero(pat.clone())).holds(&v));
        assert!(Literal::neg(Atom::AtLeast(pat.clone(), 3)).holds(&v));
        assert!(Literal::pos(Atom::IsZero(vec![guess(0, 0)])).holds(&v));
    }

    #[test]
    fn first_matching_rule_wins_and_silence_is_identity() {
        use crate::graphs::NodeLabel;
        let q0 = guess(0, 0);
        let q1 = guess(0, 1);
        let rules = RuleSet::new(
            vec![q0.clone(), q1.clone(), MachineState::Bot],
            BTreeMap::from([(NodeLabel::plain(0), q0.clone())]),
            vec![
                Rule {
                    own: q0.clone(),
                    when: vec![Literal::pos(Atom::AtLeast(
                        vec![MachineState::Bot],
                        1,
                    ))],
                    next: MachineState::Bot,
                },
                Rule { own: q0.clone(), when: vec![], next: q1.clone() },
            ],
            BTreeSet::from([q1.clone()]),
            BTreeSet::from([q0.clone(), MachineState::Bot]),
        );
        let m = DistributedMachine {
            name: "test".into(),
            alphabet: Alphabet::Plain,
            beta: 1,
            detection: Detection::Existence,
            acceptance: Acceptance::StableConsensus,
            kernel: Kernel::Rules(rules),
        };
        let empty = NeighborhoodView::default();
        assert_eq!(m.transition(&q0, &empty), q1);
        let with_bot =
            NeighborhoodView::from_states([MachineState::Bot].iter(), 1);
        assert_eq!(m.transition(&q0, &with_bot), MachineState::Bot);
        // No rule for q1: silent.
        assert_eq!(m.transition(&q1, &with_bot), q1);
    }
}
