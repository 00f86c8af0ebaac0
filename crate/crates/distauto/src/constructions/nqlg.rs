//! Recognizer for numbered quasi-line graphs with existence detection only.
//!
//! Without counting, duplicated nodes are invisible, so the machine decides
//! the *quasi*-line family: each agent moves through three stages. Stage one
//! spreads from the origin layer towards the far end; stage two reflects
//! from the far end back. An agent seeing a wave arrive from the wrong side
//! (before its own side was reached) has witnessed inconsistent layer
//! distances and fails. A quasi-line with `n` layers stabilizes in exactly
//! `2n` steps.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{
    Acceptance, Atom, Detection, DistributedMachine, Kernel, Literal,
    MachineState, Rule, RuleSet,
};
use crate::graphs::{Alphabet, NodeLabel};

fn stage(numbering: u8, stage: u8) -> MachineState {
    MachineState::Stage { numbering, stage }
}

fn with_numbering(m: u8) -> Vec<MachineState> {
    (0..3u8).map(|s| stage(m, s)).collect()
}

fn up(n: u8) -> u8 {
    (n + 1) % 3
}

fn down(n: u8) -> u8 {
    (n + 2) % 3
}

/// Build the quasi-line recognizer (existence detection, stable consensus).
pub fn nqlg_decider() -> DistributedMachine {
    let bot = MachineState::Bot;
    let mut states = Vec::new();
    for n in 0..3u8 {
        for s in 0..3u8 {
            states.push(stage(n, s));
        }
    }
    states.push(bot.clone());

    let init: BTreeMap<NodeLabel, MachineState> =
        (0..3u8).map(|n| (NodeLabel::plain(n), stage(n, 0))).collect();

    let mut rules = Vec::new();
    // Faults: a same-numbered neighbour or a failed neighbour.
    for n in 0..3u8 {
        for s in 0..3u8 {
            let own = stage(n, s);
            rules.push(Rule {
                own: own.clone(),
                when: vec![Literal::pos(Atom::AtLeast(with_numbering(n), 1))],
                next: bot.clone(),
            });
            rules.push(Rule {
                own,
                when: vec![Literal::pos(Atom::AtLeast(vec![bot.clone()], 1))],
                next: bot.clone(),
            });
        }
    }
    // Origin layer starts the forward wave.
    rules.push(Rule {
        own: stage(0, 0),
        when: vec![Literal::pos(Atom::IsZero(with_numbering(2)))],
        next: stage(0, 1),
    });
    // Forward wave: advance when the previous layer has it and the next
    // layer does not; seeing it arrive from the next layer first is a fault.
    for n in 0..3u8 {
        rules.push(Rule {
            own: stage(n, 0),
            when: vec![
                Literal::pos(Atom::AtLeast(vec![stage(down(n), 1)], 1)),
                Literal::pos(Atom::IsZero(vec![stage(up(n), 1)])),
            ],
            next: stage(n, 1),
        });
        rules.push(Rule {
            own: stage(n, 0),
            when: vec![Literal::pos(Atom::AtLeast(vec![stage(up(n), 1)], 1))],
            next: bot.clone(),
        });
    }
    // The far end turns the wave around.
    for n in 0..3u8 {
        rules.push(Rule {
            own: stage(n, 1),
            when: vec![Literal::pos(Atom::IsZero(with_numbering(up(n))))],
            next: stage(n, 2),
        });
    }
    // Backward wave, mirroring the forward one.
    for n in 0..3u8 {
        rules.push(Rule {
            own: stage(n, 1),
            when: vec![
                Literal::pos(Atom::AtLeast(vec![stage(up(n), 2)], 1)),
                Literal::pos(Atom::IsZero(vec![stage(down(n), 2)])),
            ],
            next: stage(n, 2),
        });
        rules.push(Rule {
            own: stage(n, 1),
            when: vec![Literal::pos(Atom::AtLeast(vec![stage(down(n), 2)], 1))],
            next: bot.clone(),
        });
    }

    let accepting: BTreeSet<MachineState> =
        (0..3u8).map(|m| stage(m, 2)).collect();
    let rejecting: BTreeSet<MachineState> = (0..3u8)
        .map(|m| stage(m, 0))
        .chain(std::iter::once(bot))
        .collect();

    DistributedMachine {
        name: "nqlg-decider".into(),
        alphabet: Alphabet::Plain,
        beta: 1,
        detection: Detection::Existence,
        acceptance: Acceptance::StableConsensus,
        kernel: Kernel::Rules(RuleSet::new(
            states, init, rules, accepting, rejecting,
        )),
    }
}
