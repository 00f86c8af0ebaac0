//! Recognizer for numbered line graphs.
//!
//! Each agent starts with its numbering and an unconfirmed bit. Counting up
//! to two neighbours per numbering exposes every deviation from a line
//! (duplicate numberings nearby, branching); the single origin confirms
//! itself first and confirmation then sweeps along the line, one node per
//! step, so a line of length `n` stabilizes in exactly `n` steps.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{
    Acceptance, Atom, Detection, DistributedMachine, Kernel, Literal,
    MachineState, Rule, RuleSet,
};
use crate::graphs::{Alphabet, NodeLabel};

fn guess(numbering: u8, confirmed: u8) -> MachineState {
    MachineState::Guess { numbering, guess: confirmed }
}

/// All recognizer states carrying the given numbering.
fn with_numbering(m: u8) -> Vec<MachineState> {
    vec![guess(m, 0), guess(m, 1)]
}

/// Build the line recognizer (counting bound 2, stable consensus).
pub fn nlg_decider() -> DistributedMachine {
    let bot = MachineState::Bot;
    let mut states = Vec::new();
    for n in 0..3u8 {
        for c in 0..2u8 {
            states.push(guess(n, c));
        }
    }
    states.push(bot.clone());

    let init: BTreeMap<NodeLabel, MachineState> =
        (0..3u8).map(|n| (NodeLabel::plain(n), guess(n, 0))).collect();

    let mut rules = Vec::new();
    // Faults: a same-numbered neighbour, two neighbours sharing any
    // numbering, or an already-failed neighbour.
    for n in 0..3u8 {
        for c in 0..2u8 {
            let own = guess(n, c);
            rules.push(Rule {
                own: own.clone(),
                when: vec![Literal::pos(Atom::AtLeast(with_numbering(n), 1))],
                next: bot.clone(),
            });
            for m in 0..3u8 {
                rules.push(Rule {
                    own: own.clone(),
                    when: vec![Literal::pos(Atom::AtLeast(
                        with_numbering(m),
                        2,
                    ))],
                    next: bot.clone(),
                });
            }
            rules.push(Rule {
                own,
                when: vec![Literal::pos(Atom::AtLeast(vec![bot.clone()], 1))],
                next: bot.clone(),
            });
        }
    }
    // The unique origin (numbered 0, nothing numbered 2 next to it)
    // confirms itself.
    rules.push(Rule {
        own: guess(0, 0),
        when: vec![Literal::pos(Atom::IsZero(with_numbering(2)))],
        next: guess(0, 1),
    });
    // Confirmation spreads along the line.
    let confirmed: Vec<MachineState> =
        (0..3u8).map(|m| guess(m, 1)).collect();
    for n in 0..3u8 {
        rules.push(Rule {
            own: guess(n, 0),
            when: vec![Literal::pos(Atom::AtLeast(confirmed.clone(), 1))],
            next: guess(n, 1),
        });
    }

    let accepting: BTreeSet<MachineState> =
        (0..3u8).map(|m| guess(m, 1)).collect();
    let rejecting: BTreeSet<MachineState> = (0..3u8)
        .map(|m| guess(m, 0))
        .chain(std::iter::once(bot))
        .collect();

    DistributedMachine {
        name: "nlg-decider".into(),
        alphabet: Alphabet::Plain,
        beta: 2,
        detection: Detection::Counting,
        acceptance: Acceptance::StableConsensus,
        kernel: Kernel::Rules(RuleSet::new(
            states, init, rules, accepting, rejecting,
        )),
    }
}

#[cfg(test)]
mod tests {
    use crate::engine::{run_synchronous, validate_machine, RunLimits, Verdict};
    use crate::graphs::{make_ncg, make_nlg};

    use super::*;

    #[test]
    fn machine_is_well_formed() {
        assert_eq!(validate_machine(&nlg_decider()), Vec::<String>::new());
    }

    #[test]
    fn accepts_lines_in_length_many_steps() {
        let m = nlg_decider();
        for n in 1..=12 {
            let g = make_nlg(n).unwrap();
            let r =
                run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::Accepting { first_stable_step: n },
                "length {n}"
            );
        }
    }

    #[test]
    fn rejects_cycles_immediately() {
        let m = nlg_decider();
        for n in [3, 6, 9] {
            let g = make_ncg(n).unwrap();
            let r =
                run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
            assert_eq!(r.verdict, Verdict::Rejecting { first_stable_step: 0 });
        }
    }
}
