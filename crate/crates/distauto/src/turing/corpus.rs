//! A small fixed corpus of Turing machines used throughout the tests and
//! examples.

use std::collections::{BTreeMap, BTreeSet};

use super::{sym, TuringMachine};

/// Halts immediately: a single state with no transitions.
pub fn immediate_halter() -> TuringMachine {
    TuringMachine::new(
        "immediate-halter",
        vec![sym("halt")],
        sym("halt"),
        BTreeSet::from([sym("halt")]),
        vec![sym("_")],
        sym("_"),
        vec![],
        BTreeMap::new(),
    )
    .expect("corpus machine is valid")
}

/// Writes `k` marks while walking right, then halts. Runs for exactly `k`
/// steps and visits `k + 1` cells.
pub fn inc(k: usize) -> TuringMachine {
    let states: Vec<_> = (0..=k).map(|i| sym(&format!("s{i}"))).collect();
    let mut delta = BTreeMap::new();
    for i in 0..k {
        delta.insert(
            (states[i].clone(), sym("_")),
            (states[i + 1].clone(), sym("x"), 1),
        );
    }
    TuringMachine::new(
        format!("inc-{k}"),
        states.clone(),
        states[0].clone(),
        BTreeSet::from([states[k].clone()]),
        vec![sym("_"), sym("x")],
        sym("_"),
        vec![],
        delta,
    )
    .expect("corpus machine is valid")
}

/// A busy-beaver style champion among the 3-state, 2-symbol machines that
/// never step past the left end of the tape (found by exhaustive search):
/// halts after 13 steps on the empty tape with final tape `_ x _ x`.
pub fn busy_beaver() -> TuringMachine {
    let (a, b, c) = (sym("a"), sym("b"), sym("c"));
    let (blank, x) = (sym("_"), sym("x"));
    let delta = BTreeMap::from([
        ((a.clone(), blank.clone()), (b.clone(), blank.clone(), 1)),
        ((b.clone(), blank.clone()), (c.clone(), x.clone(), -1)),
        ((b.clone(), x.clone()), (b.clone(), x.clone(), 1)),
        ((c.clone(), blank.clone()), (b.clone(), blank.clone(), 1)),
        ((c.clone(), x.clone()), (a.clone(), blank.clone(), -1)),
        // delta(a, x) is undefined: the machine halts there.
    ]);
    TuringMachine::new(
        "busy-beaver",
        vec![a.clone(), b, c],
        a,
        BTreeSet::new(),
        vec![blank.clone(), x],
        blank,
        vec![],
        delta,
    )
    .expect("corpus machine is valid")
}

/// Bounces between cells 0 and 1 forever.
pub fn ping_pong() -> TuringMachine {
    let (a, b) = (sym("a"), sym("b"));
    let blank = sym("_");
    let delta = BTreeMap::from([
        ((a.clone(), blank.clone()), (b.clone(), blank.clone(), 1)),
        ((b.clone(), blank.clone()), (a.clone(), blank.clone(), -1)),
    ]);
    TuringMachine::new(
        "ping-pong",
        vec![a.clone(), b],
        a,
        BTreeSet::new(),
        vec![blank.clone()],
        blank,
        vec![],
        delta,
    )
    .expect("corpus machine is valid")
}

/// The whole corpus: the immediate halter, `inc-1` through `inc-4`, the
/// boundary-safe busy beaver and the non-halting ping-pong machine.
pub fn corpus() -> Vec<TuringMachine> {
    let mut out = vec![immediate_halter()];
    for k in 1..=4 {
        out.push(inc(k));
    }
    out.push(busy_beaver());
    out.push(ping_pong());
    out
}
