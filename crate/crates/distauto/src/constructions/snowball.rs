//! The snowball-fight machine on snowball-labelled lines.
//!
//! Agents face left or right and may hold a snowball. A throw only succeeds
//! when the facing neighbour is ready (ball-free); caught balls turn the
//! catcher around. On the harmonious lines the volley visits the whole line
//! and finally drains at the left end, which raises the "done" intent that
//! sweeps right and converts everyone to success. Any observable deviation
//! (duplicate numbering, unexpected holder alignment, a ball flying off the
//! line) fails the run.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{
    Acceptance, Atom, Detection, DistributedMachine, Kernel, Literal,
    MachineState, Rule, RuleSet,
};
use crate::graphs::{Alphabet, NodeLabel};

fn rawf(numbering: u8, facing: i8, ball: u8) -> MachineState {
    MachineState::RawFight { numbering, facing, ball }
}

fn fight(numbering: u8, facing: i8, ball: u8) -> MachineState {
    MachineState::Fight { numbering, facing, ball }
}

fn shifted(n: u8, d: i8) -> u8 {
    (n as i16 + d as i16).rem_euclid(3) as u8
}

fn raw_with_numbering(m: u8) -> Vec<MachineState> {
    let mut out = Vec::new();
    for facing in [-1, 1] {
        for ball in 0..2u8 {
            out.push(rawf(m, facing, ball));
        }
    }
    out
}

fn fight_with_numbering(m: u8) -> Vec<MachineState> {
    let mut out = Vec::new();
    for facing in [-1, 1] {
        for ball in 0..2u8 {
            out.push(fight(m, facing, ball));
        }
    }
    out
}

/// All uninitialized holders, any numbering and facing.
fn raw_holders() -> Vec<MachineState> {
    let mut out = Vec::new();
    for m in 0..3u8 {
        for facing in [-1, 1] {
            out.push(rawf(m, facing, 1));
        }
    }
    out
}

/// Build the snowball-fight machine (counting bound 2, halting).
pub fn snowball_machine() -> DistributedMachine {
    let bot = MachineState::Bot;
    let done = MachineState::Done;
    let intent = MachineState::Intent;

    let mut states = Vec::new();
    for m in 0..3u8 {
        states.extend(raw_with_numbering(m));
    }
    for m in 0..3u8 {
        states.extend(fight_with_numbering(m));
    }
    states.push(done.clone());
    states.push(intent.clone());
    states.push(bot.clone());
    let all_states = states.clone();

    let init: BTreeMap<NodeLabel, MachineState> = {
        let mut init = BTreeMap::new();
        for m in 0..3u8 {
            for facing in [-1, 1] {
                for ball in 0..2u8 {
                    init.insert(
                        NodeLabel::snowball(m, facing, ball),
                        rawf(m, facing, ball),
                    );
                }
            }
        }
        init
    };

    // The run-ending markers suspend the fight rules.
    let quiet = || {
        vec![
            Literal::pos(Atom::IsZero(vec![done.clone()])),
            Literal::pos(Atom::IsZero(vec![intent.clone()])),
        ]
    };

    let mut rules = Vec::new();
    // Faults visible before initialization: a same-numbered uninitialized
    // neighbour or two uninitialized neighbours sharing a numbering.
    for m in 0..3u8 {
        for facing in [-1, 1] {
            for ball in 0..2u8 {
                let own = rawf(m, facing, ball);
                rules.push(Rule {
                    own: own.clone(),
                    when: vec![Literal::pos(Atom::AtLeast(
                        raw_with_numbering(m),
                        1,
                    ))],
                    next: bot.clone(),
                });
                for k in 0..3u8 {
                    rules.push(Rule {
                        own: own.clone(),
                        when: vec![Literal::pos(Atom::AtLeast(
                            raw_with_numbering(k),
                            2,
                        ))],
                        next: bot.clone(),
                    });
                }
            }
        }
    }
    // Failure propagation (success states stay out of it).
    for own in &all_states {
        if *own == done || *own == bot {
            continue;
        }
        rules.push(Rule {
            own: own.clone(),
            when: vec![Literal::pos(Atom::AtLeast(vec![bot.clone()], 1))],
            next: bot.clone(),
        });
    }
    // Initialization: a holder joins unless it sees two neighbouring
    // holders; a non-holder joins exactly when it does. Anything else is a
    // malformed neighbourhood.
    for m in 0..3u8 {
        for facing in [-1, 1] {
            for ball in 0..2u8 {
                let own = rawf(m, facing, ball);
                let crowded = Atom::AtLeast(raw_holders(), 2);
                let mut when = quiet();
                when.push(if ball == 1 {
                    Literal::neg(crowded)
                } else {
                    Literal::pos(crowded)
                });
                rules.push(Rule {
                    own: own.clone(),
                    when,
                    next: fight(m, facing, ball),
                });
                rules.push(Rule { own, when: quiet(), next: bot.clone() });
            }
        }
    }
    // Throw: the facing neighbour is ready to catch.
    for m in 0..3u8 {
        for facing in [-1i8, 1] {
            let mut when = vec![Literal::pos(Atom::AtLeast(
                vec![
                    fight(shifted(m, facing), -1, 0),
                    fight(shifted(m, facing), 1, 0),
                ],
                1,
            ))];
            when.extend(quiet());
            rules.push(Rule {
                own: fight(m, facing, 1),
                when,
                next: fight(m, facing, 0),
            });
        }
    }
    // Catch: a ball arrives from the facing direction; turn around with it.
    for m in 0..3u8 {
        for facing in [-1i8, 1] {
            let mut when = vec![Literal::pos(Atom::AtLeast(
                vec![fight(shifted(m, facing), -facing, 1)],
                1,
            ))];
            when.extend(quiet());
            rules.push(Rule {
                own: fight(m, facing, 0),
                when,
                next: fight(m, -facing, 1),
            });
        }
    }
    // Hit: a ball arrives from behind while nothing comes from the front.
    for m in 0..3u8 {
        for facing in [-1i8, 1] {
            let mut when = vec![
                Literal::pos(Atom::IsZero(vec![fight(
                    shifted(m, facing),
                    -facing,
                    1,
                )])),
                Literal::pos(Atom::AtLeast(
                    vec![fight(shifted(m, -facing), facing, 1)],
                    1,
                )),
            ];
            when.extend(quiet());
            rules.push(Rule {
                own: fight(m, facing, 0),
                when,
                next: bot.clone(),
            });
        }
    }
    // Ending: the left end holding a leftward ball has drained the volley.
    rules.push(Rule {
        own: fight(0, -1, 1),
        when: vec![Literal::pos(Atom::IsZero(fight_with_numbering(2)))],
        next: intent.clone(),
    });
    // A holder facing off the line anywhere else has thrown into the void.
    for m in 0..3u8 {
        for facing in [-1i8, 1] {
            if (m, facing) == (0, -1) {
                continue;
            }
            rules.push(Rule {
                own: fight(m, facing, 1),
                when: vec![Literal::pos(Atom::IsZero(fight_with_numbering(
                    shifted(m, facing),
                )))],
                next: bot.clone(),
            });
        }
    }
    // The done-intent sweeps towards the right end, then flips to success.
    for m in 0..3u8 {
        for facing in [-1i8, 1] {
            for ball in 0..2u8 {
                let own = fight(m, facing, ball);
                rules.push(Rule {
                    own: own.clone(),
                    when: vec![
                        Literal::pos(Atom::AtLeast(vec![intent.clone()], 1)),
                        Literal::pos(Atom::AtLeast(
                            fight_with_numbering(shifted(m, 1)),
                            1,
                        )),
                    ],
                    next: intent.clone(),
                });
                rules.push(Rule {
                    own,
                    when: vec![
                        Literal::pos(Atom::AtLeast(vec![intent.clone()], 1)),
                        Literal::pos(Atom::IsZero(fight_with_numbering(
                            shifted(m, 1),
                        ))),
                    ],
                    next: done.clone(),
                });
            }
        }
    }
    rules.push(Rule {
        own: intent.clone(),
        when: vec![Literal::pos(Atom::AtLeast(vec![done.clone()], 1))],
        next: done.clone(),
    });
    rules.push(Rule {
        own: intent.clone(),
        when: vec![Literal::pos(Atom::IsZero(all_states.clone()))],
        next: done.clone(),
    });

    DistributedMachine {
        name: "snowball-fight".into(),
        alphabet: Alphabet::Snowball,
        beta: 2,
        detection: Detection::Counting,
        acceptance: Acceptance::Halting,
        kernel: Kernel::Rules(RuleSet::new(
            states,
            init,
            rules,
            BTreeSet::from([done]),
            BTreeSet::from([bot]),
        )),
    }
}
