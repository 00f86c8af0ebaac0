//! The "visit every cell" transformation.
//!
//! `make_t_infinity(t)` builds a machine that simulates `t` step for step
//! but, after every simulated transition, walks right to the first
//! never-visited cell, marks it, and returns. It halts exactly when `t`
//! halts, and when `t` runs forever it visits an unbounded, contiguous and
//! monotonically growing prefix of the tape -- even if `t` itself keeps
//! shuttling over finitely many cells.
//!
//! Tape symbols are tripled: `g` (never visited), `g.v` (visited) and `g.c`
//! (visited, temporarily marking the cell the head will resume from). Each
//! state `q` of `t` becomes five phase states: `q.sim` performs `t`'s
//! transition, `q.mark` drops the resume marker, `q.sweep` walks right over
//! visited cells, `q.ret` walks back left, and `q.back` bounces off the
//! marker to the right and steps back onto it, so the machine never moves
//! left of the marker (and thus never off the left end on its own).

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::Sym;

use super::{sym, TuringMachine};

fn phased(q: &Sym, phase: &str) -> Sym {
    sym(&format!("{q}.{phase}"))
}

fn visited(g: &Sym) -> Sym {
    sym(&format!("{g}.v"))
}

fn current(g: &Sym) -> Sym {
    sym(&format!("{g}.c"))
}

/// Build the always-exploring variant of `t`.
pub fn make_t_infinity(t: &TuringMachine) -> TuringMachine {
    let mut states = Vec::new();
    for q in &t.states {
        for phase in ["sim", "mark", "sweep", "ret", "back"] {
            states.push(phased(q, phase));
        }
    }
    let mut alphabet = Vec::new();
    for g in &t.tape_alphabet {
        alphabet.push(g.clone());
        alphabet.push(visited(g));
        alphabet.push(current(g));
    }

    let mut delta = BTreeMap::new();
    // Simulate one transition of `t`, on fresh and on visited cells alike,
    // leaving the departed cell visited.
    for ((q, g), (q2, g2, mv)) in &t.delta {
        let next = (phased(q2, "mark"), visited(g2), *mv);
        delta.insert((phased(q, "sim"), g.clone()), next.clone());
        delta.insert((phased(q, "sim"), visited(g)), next);
    }
    for q in &t.states {
        for g in &t.tape_alphabet {
            // Mark the arrival cell as the resume point and head right.
            let to_sweep = (phased(q, "sweep"), current(g), 1);
            delta.insert((phased(q, "mark"), g.clone()), to_sweep.clone());
            delta.insert((phased(q, "mark"), visited(g)), to_sweep);
            // Sweep right across visited cells ...
            delta.insert(
                (phased(q, "sweep"), visited(g)),
                (phased(q, "sweep"), visited(g), 1),
            );
            // ... until the first fresh cell, which becomes visited.
            delta.insert(
                (phased(q, "sweep"), g.clone()),
                (phased(q, "ret"), visited(g), -1),
            );
            // Walk back to the marker.
            delta.insert(
                (phased(q, "ret"), visited(g)),
                (phased(q, "ret"), visited(g), -1),
            );
            // Clear the marker, bounce one cell right and come back, so the
            // leftmost cell is reached without a leftward overshoot.
            delta.insert(
                (phased(q, "ret"), current(g)),
                (phased(q, "back"), visited(g), 1),
            );
            delta.insert(
                (phased(q, "back"), visited(g)),
                (phased(q, "sim"), visited(g), -1),
            );
        }
    }
    // Accepting states of `t` have no transitions, so the phase rules above
    // were only generated for states that can still move; drop the ones
    // rooted at accepting states to keep them silent.
    let accepting_sim: BTreeSet<Sym> =
        t.accepting.iter().map(|f| phased(f, "sim")).collect();
    delta.retain(|(q, _), _| !accepting_sim.contains(q));

    TuringMachine::new(
        format!("{}.inf", t.name),
        states,
        phased(&t.initial, "sim"),
        accepting_sim,
        alphabet,
        t.blank.clone(),
        t.input.clone(),
        delta,
    )
    .expect("transformed machine is valid")
}

#[cfg(test)]
mod tests {
    use super::super::{corpus, tm_run, TmOutcome};
    use super::*;

    #[test]
    fn halting_agreement_on_the_corpus() {
        for t in corpus() {
            let tinf = make_t_infinity(&t);
            let base = tm_run(&t, 2000);
            let inf = tm_run(&tinf, 200_000);
            match (base, inf) {
                (TmOutcome::Halts { .. }, TmOutcome::Halts { .. })
                | (TmOutcome::Running { .. }, TmOutcome::Running { .. }) => {}
                (b, i) => panic!("{}: {:?} vs {:?}", t.name, b, i),
            }
        }
    }

    #[test]
    fn exploration_is_monotone_and_unbounded_for_ping_pong() {
        let t = super::super::ping_pong();
        let tinf = make_t_infinity(&t);
        let mut config = tinf.initial_config();
        let mut last_len = config.tape.len();
        let mut steps = 0usize;
        while config.tape.len() < 20 && steps < 100_000 {
            match super::super::tm_step(&tinf, &config) {
                super::super::TmStep::Next(next) => config = next,
                other => panic!("unexpected {other:?}"),
            }
            assert!(config.tape.len() >= last_len);
            last_len = config.tape.len();
            steps += 1;
        }
        assert!(config.tape.len() >= 20, "only {} cells", config.tape.len());
    }

    #[test]
    fn halting_machines_preserve_final_tape_content() {
        let t = super::super::inc(3);
        let tinf = make_t_infinity(&t);
        let TmOutcome::Halts { config, .. } = tm_run(&tinf, 10_000) else {
            panic!()
        };
        // The visited prefix carries the base tape of `t`'s own run.
        let base: Vec<String> = config
            .tape
            .iter()
            .map(|s| s.trim_end_matches(".v").trim_end_matches(".c").to_string())
            .collect();
        assert_eq!(&base[0..4], ["x", "x", "x", "_"]);
    }
}
