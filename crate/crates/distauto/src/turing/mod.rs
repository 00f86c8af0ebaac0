//! Left-bounded single-tape Turing machines.
//!
//! The tape is infinite to the right only; the head starts on cell 0 and a
//! move past the left end aborts the run. The machine halts exactly when no
//! transition is defined for the current state/symbol pair. The tape vector
//! only ever grows (a blank is appended whenever the head steps onto the
//! first cell beyond it), so its length equals the number of visited cells.

mod corpus;
mod format;
mod tinf;

pub use corpus::{
    busy_beaver, corpus, immediate_halter, inc, ping_pong,
};
pub use format::{parse_tm, serialize_tm};
pub use tinf::make_t_infinity;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::engine::Sym;

/// Errors raised when constructing a Turing machine.
#[derive(Debug, thiserror::Error)]
pub enum TmError {
    #[error("symbol or state `{0}` contains a reserved character")]
    BadToken(String),
    #[error("initial state `{0}` is not declared")]
    UnknownInitial(String),
    #[error("blank symbol `{0}` is not in the tape alphabet")]
    UnknownBlank(String),
    #[error("`{0}` referenced by {1} is not declared")]
    Undeclared(String, &'static str),
    #[error("accepting state `{0}` has outgoing transitions")]
    NoisyAccepting(String),
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
}

/// Head movement of a transition.
pub type Move = i8;

/// A deterministic left-bounded Turing machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    pub name: String,
    pub states: Vec<Sym>,
    pub initial: Sym,
    pub accepting: BTreeSet<Sym>,
    pub tape_alphabet: Vec<Sym>,
    pub blank: Sym,
    pub input: Vec<Sym>,
    pub delta: BTreeMap<(Sym, Sym), (Sym, Sym, Move)>,
}

fn check_token(token: &str) -> Result<(), TmError> {
    let ok = !token.is_empty()
        && token.chars().all(|c| {
            !c.is_whitespace()
                && !matches!(c, '(' | ')' | ',' | '{' | '}' | '|' | ':' | '#')
        });
    if ok {
        Ok(())
    } else {
        Err(TmError::BadToken(token.to_string()))
    }
}

impl TuringMachine {
    /// Build and validate a machine.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        states: Vec<Sym>,
        initial: Sym,
        accepting: BTreeSet<Sym>,
        tape_alphabet: Vec<Sym>,
        blank: Sym,
        input: Vec<Sym>,
        delta: BTreeMap<(Sym, Sym), (Sym, Sym, Move)>,
    ) -> Result<TuringMachine, TmError> {
        let name = name.into();
        check_token(&name)?;
        for token in states.iter().chain(tape_alphabet.iter()) {
            check_token(token)?;
        }
        let state_set: BTreeSet<&Sym> = states.iter().collect();
        if state_set.len() != states.len() {
            return Err(TmError::Duplicate("a state".into()));
        }
        let sym_set: BTreeSet<&Sym> = tape_alphabet.iter().collect();
        if sym_set.len() != tape_alphabet.len() {
            return Err(TmError::Duplicate("a symbol".into()));
        }
        if !state_set.contains(&initial) {
            return Err(TmError::UnknownInitial(initial.to_string()));
        }
        if !sym_set.contains(&blank) {
            return Err(TmError::UnknownBlank(blank.to_string()));
        }
        for f in &accepting {
            if !state_set.contains(f) {
                return Err(TmError::Undeclared(
                    f.to_string(),
                    "the accepting set",
                ));
            }
        }
        for s in &input {
            if !sym_set.contains(s) {
                return Err(TmError::Undeclared(s.to_string(), "the input"));
            }
        }
        for ((q, g), (q2, g2, d)) in &delta {
            for state in [q, q2] {
                if !state_set.contains(state) {
                    return Err(TmError::Undeclared(
                        state.to_string(),
                        "a transition",
                    ));
                }
            }
            for sym in [g, g2] {
                if !sym_set.contains(sym) {
                    return Err(TmError::Undeclared(
                        sym.to_string(),
                        "a transition",
                    ));
                }
            }
            if *d != 1 && *d != -1 {
                return Err(TmError::Undeclared(
                    d.to_string(),
                    "a transition move",
                ));
            }
            if accepting.contains(q) {
                return Err(TmError::NoisyAccepting(q.to_string()));
            }
        }
        // Canonical alphabet order (blank first, the rest sorted): the text
        // format has no explicit alphabet line, so parsing re-derives it.
        let mut tape_alphabet = tape_alphabet;
        tape_alphabet.sort();
        tape_alphabet.retain(|s| *s != blank);
        tape_alphabet.insert(0, blank.clone());
        Ok(TuringMachine {
            name,
            states,
            initial,
            accepting,
            tape_alphabet,
            blank,
            input,
            delta,
        })
    }

    /// The configuration before the first step: the input written from cell
    /// 0 (or one blank cell for empty input), head on cell 0.
    pub fn initial_config(&self) -> TmConfig {
        let tape = if self.input.is_empty() {
            vec![self.blank.clone()]
        } else {
            self.input.clone()
        };
        TmConfig { state: self.initial.clone(), tape, head: 0 }
    }
}

/// A full machine configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmConfig {
    pub state: Sym,
    /// Every cell the head has visited so far; never shrinks.
    pub tape: Vec<Sym>,
    pub head: usize,
}

/// The result of one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TmStep {
    /// No transition is defined: the machine has halted.
    Halted,
    /// The head attempted to move past the left end of the tape.
    BoundaryViolation,
    Next(TmConfig),
}

/// Apply one transition.
pub fn tm_step(t: &TuringMachine, c: &TmConfig) -> TmStep {
    let symbol = c.tape[c.head].clone();
    let Some((state, write, mv)) =
        t.delta.get(&(c.state.clone(), symbol)).cloned()
    else {
        return TmStep::Halted;
    };
    let mut tape = c.tape.clone();
    tape[c.head] = write;
    let head = c.head as i64 + mv as i64;
    if head < 0 {
        return TmStep::BoundaryViolation;
    }
    let head = head as usize;
    if head == tape.len() {
        tape.push(t.blank.clone());
    }
    TmStep::Next(TmConfig { state, tape, head })
}

/// The result of a bounded run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TmOutcome {
    Halts { steps: usize, config: TmConfig, cells_visited: usize },
    Running { steps: usize, config: TmConfig },
    BoundaryViolation { steps: usize },
}

/// Run from the initial configuration for at most `max_steps` steps.
pub fn tm_run(t: &TuringMachine, max_steps: usize) -> TmOutcome {
    let mut config = t.initial_config();
    for steps in 0..max_steps {
        match tm_step(t, &config) {
            TmStep::Halted => {
                let cells_visited = config.tape.len();
                return TmOutcome::Halts { steps, config, cells_visited };
            }
            TmStep::BoundaryViolation => {
                return TmOutcome::BoundaryViolation { steps }
            }
            TmStep::Next(next) => config = next,
        }
    }
    if matches!(tm_step(t, &config), TmStep::Halted) {
        let cells_visited = config.tape.len();
        return TmOutcome::Halts { steps: max_steps, config, cells_visited };
    }
    TmOutcome::Running { steps: max_steps, config }
}

/// Convenience constructor for interned symbols.
pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stepping_appends_blanks_and_respects_the_left_end() {
        let t = TuringMachine::new(
            "walker",
            vec![sym("a"), sym("b")],
            sym("a"),
            BTreeSet::new(),
            vec![sym("_")],
            sym("_"),
            vec![],
            BTreeMap::from([
                ((sym("a"), sym("_")), (sym("b"), sym("_"), 1)),
                ((sym("b"), sym("_")), (sym("a"), sym("_"), -1)),
            ]),
        )
        .unwrap();
        let c0 = t.initial_config();
        assert_eq!(c0.tape.len(), 1);
        let TmStep::Next(c1) = tm_step(&t, &c0) else { panic!() };
        assert_eq!(c1.tape.len(), 2);
        assert_eq!(c1.head, 1);
        // b moves left back to 0; a at 0 moves right again -- never halts.
        assert!(matches!(tm_run(&t, 100), TmOutcome::Running { .. }));
    }

    #[test]
    fn boundary_violation_is_detected() {
        let t = TuringMachine::new(
            "lefty",
            vec![sym("a")],
            sym("a"),
            BTreeSet::new(),
            vec![sym("_")],
            sym("_"),
            vec![],
            BTreeMap::from([((sym("a"), sym("_")), (sym("a"), sym("_"), -1))]),
        )
        .unwrap();
        assert_eq!(tm_run(&t, 10), TmOutcome::BoundaryViolation { steps: 0 });
    }

    #[test]
    fn construction_is_validated() {
        assert!(matches!(
            TuringMachine::new(
                "bad token",
                vec![sym("a")],
                sym("a"),
                BTreeSet::new(),
                vec![sym("_")],
                sym("_"),
                vec![],
                BTreeMap::new(),
            ),
            Err(TmError::BadToken(_))
        ));
        assert!(matches!(
            TuringMachine::new(
                "m",
                vec![sym("a")],
                sym("q"),
                BTreeSet::new(),
                vec![sym("_")],
                sym("_"),
                vec![],
                BTreeMap::new(),
            ),
            Err(TmError::UnknownInitial(_))
        ));
        // Accepting states must be silent.
        assert!(matches!(
            TuringMachine::new(
                "m",
                vec![sym("a")],
                sym("a"),
                BTreeSet::from([sym("a")]),
                vec![sym("_")],
                sym("_"),
                vec![],
                BTreeMap::from([(
                    (sym("a"), sym("_")),
                    (sym("a"), sym("_"), 1)
                )]),
            ),
            Err(TmError::NoisyAccepting(_))
        ));
    }
}
