//! Simulating a Turing machine head on a numbered line.
//!
//! Every node is one tape cell. After one initialization step the origin
//! spawns the head; one machine transition then takes two distributed steps
//! (announce the move, then hand the head over), so after `m` machine steps
//! the configuration at distributed step `2m + 1` encodes the machine
//! configuration exactly. A head announcing a move with no cell on that
//! side has run off the line: the line is too short for the computation and
//! the run fails. Success and failure both propagate to every node.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{
    Acceptance, Atom, Detection, DistributedMachine, HeadMode, Kernel,
    Literal, MachineState, Rule, RuleSet, Sym,
};
use crate::graphs::{Alphabet, NodeLabel};
use crate::turing::{TmConfig, TuringMachine};

use crate::engine::MachineError;

fn raw(symbol: &Sym, numbering: u8) -> MachineState {
    MachineState::RawCell { symbol: symbol.clone(), numbering }
}

fn cell(symbol: &Sym, numbering: u8) -> MachineState {
    MachineState::Cell { symbol: symbol.clone(), numbering }
}

fn head(symbol: &Sym, numbering: u8, q: &Sym, mode: HeadMode) -> MachineState {
    MachineState::Head {
        symbol: symbol.clone(),
        numbering,
        tm_state: q.clone(),
        mode,
    }
}

fn shifted(n: u8, d: i8) -> u8 {
    (n as i16 + d as i16).rem_euclid(3) as u8
}

/// Build the head-simulation machine for `t` (existence detection,
/// halting).
pub fn tm_head_machine(t: &TuringMachine) -> DistributedMachine {
    let bot = MachineState::Bot;
    let done = MachineState::Done;

    let mut states = Vec::new();
    for g in &t.tape_alphabet {
        for n in 0..3u8 {
            states.push(raw(g, n));
            states.push(cell(g, n));
        }
    }
    for g in &t.tape_alphabet {
        for n in 0..3u8 {
            for q in &t.states {
                for mode in
                    [HeadMode::Settled, HeadMode::MoveRight, HeadMode::MoveLeft]
                {
                    states.push(head(g, n, q, mode));
                }
            }
        }
    }
    states.push(done.clone());
    states.push(bot.clone());

    let init: BTreeMap<NodeLabel, MachineState> =
        (0..3u8).map(|n| (NodeLabel::plain(n), raw(&t.blank, n))).collect();

    // Pattern helpers quantifying over the whole tape alphabet.
    let raw_num = |m: u8| -> Vec<MachineState> {
        t.tape_alphabet.iter().map(|g| raw(g, m)).collect()
    };
    let cell_num = |m: u8| -> Vec<MachineState> {
        t.tape_alphabet.iter().map(|g| cell(g, m)).collect()
    };
    let head_pat = |m: u8, q: &Sym, mode: HeadMode| -> Vec<MachineState> {
        t.tape_alphabet.iter().map(|g| head(g, m, q, mode)).collect()
    };

    let mut rules = Vec::new();
    // The origin (numbered 0, no numbered-2 cell next to it) becomes the
    // head; every other cell initializes plainly.
    rules.push(Rule {
        own: raw(&t.blank, 0),
        when: vec![Literal::pos(Atom::IsZero(raw_num(2)))],
        next: head(&t.blank, 0, &t.initial, HeadMode::Settled),
    });
    for n in 0..3u8 {
        rules.push(Rule {
            own: raw(&t.blank, n),
            when: vec![],
            next: cell(&t.blank, n),
        });
    }
    // Announce one machine transition in place.
    for ((q, g), (q2, g2, mv)) in &t.delta {
        for n in 0..3u8 {
            rules.push(Rule {
                own: head(g, n, q, HeadMode::Settled),
                when: vec![],
                next: head(g2, n, q2, HeadMode::moving(*mv)),
            });
        }
    }
    // Hand the head over: the mover becomes a cell as soon as the target
    // cell exists; the target raises the head when it sees a mover aimed at
    // it.
    for g in &t.tape_alphabet {
        for n in 0..3u8 {
            for q in &t.states {
                for d in [1i8, -1i8] {
                    rules.push(Rule {
                        own: head(g, n, q, HeadMode::moving(d)),
                        when: vec![Literal::pos(Atom::AtLeast(
                            cell_num(shifted(n, d)),
                            1,
                        ))],
                        next: cell(g, n),
                    });
                }
            }
        }
    }
    for q in &t.states {
        for d in [1i8, -1i8] {
            for g in &t.tape_alphabet {
                for n in 0..3u8 {
                    rules.push(Rule {
                        own: cell(g, n),
                        when: vec![Literal::pos(Atom::AtLeast(
                            head_pat(shifted(n, -d), q, HeadMode::moving(d)),
                            1,
                        ))],
                        next: head(g, n, q, HeadMode::Settled),
                    });
                }
            }
        }
    }
    // Halting: no transition defined for (state, symbol).
    for q in &t.states {
        for g in &t.tape_alphabet {
            if t.delta.contains_key(&(q.clone(), g.clone())) {
                continue;
            }
            for n in 0..3u8 {
                rules.push(Rule {
                    own: head(g, n, q, HeadMode::Settled),
                    when: vec![],
                    next: done.clone(),
                });
            }
        }
    }
    // Overflow: the announced target cell does not exist.
    for g in &t.tape_alphabet {
        for n in 0..3u8 {
            for q in &t.states {
                for d in [1i8, -1i8] {
                    rules.push(Rule {
                        own: head(g, n, q, HeadMode::moving(d)),
                        when: vec![Literal::pos(Atom::IsZero(cell_num(
                            shifted(n, d),
                        )))],
                        next: bot.clone(),
                    });
                }
            }
        }
    }
    // Verdict propagation.
    for own in &states {
        if *own == done || *own == bot {
            continue;
        }
        rules.push(Rule {
            own: own.clone(),
            when: vec![Literal::pos(Atom::AtLeast(vec![done.clone()], 1))],
            next: done.clone(),
        });
        rules.push(Rule {
            own: own.clone(),
            when: vec![Literal::pos(Atom::AtLeast(vec![bot.clone()], 1))],
            next: bot.clone(),
        });
    }

    DistributedMachine {
        name: format!("{}.head", t.name),
        alphabet: Alphabet::Plain,
        beta: 1,
        detection: Detection::Existence,
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

/// The distributed configuration encoding machine configuration `c` on a
/// line of `n` cells: cell `i` carries tape symbol `i` (blank beyond the
/// written part) and numbering `i mod 3`, with the settled head at `c.head`.
pub fn encode_tm_config(
    t: &TuringMachine,
    c: &TmConfig,
    n: usize,
) -> Result<Vec<MachineState>, MachineError> {
    if c.head >= n {
        return Err(MachineError::InvalidArgument(format!(
            "head position {} does not fit on a line of length {n}",
            c.head
        )));
    }
    Ok((0..n)
        .map(|i| {
            let symbol = c.tape.get(i).unwrap_or(&t.blank);
            let numbering = (i % 3) as u8;
            if i == c.head {
                head(symbol, numbering, &c.state, HeadMode::Settled)
            } else {
                cell(symbol, numbering)
            }
        })
        .collect())
}
