//! Text format for Turing machines.
//!
//! ```text
//! tm busy-beaver
//! states a b c
//! initial a
//! accept
//! blank _
//! input
//! delta a _ -> b _ R
//! ```
//!
//! The tape alphabet is implicit: the blank plus every symbol mentioned in
//! the input or a transition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::engine::Sym;
use crate::graphs::ParseError;

use super::{sym, Move, TuringMachine};

fn line_err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parse the Turing machine text format.
pub fn parse_tm(input: &str) -> Result<TuringMachine, ParseError> {
    let mut name: Option<String> = None;
    let mut states: Option<Vec<Sym>> = None;
    let mut initial: Option<Sym> = None;
    let mut accepting: Option<BTreeSet<Sym>> = None;
    let mut blank: Option<Sym> = None;
    let mut tape_input: Option<Vec<Sym>> = None;
    let mut delta: BTreeMap<(Sym, Sym), (Sym, Sym, Move)> = BTreeMap::new();
    let mut delta_lines = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "tm" => {
                if name.is_some() {
                    return line_err(lineno, "duplicate tm header");
                }
                match fields.as_slice() {
                    [_, n] => name = Some(n.to_string()),
                    _ => return line_err(lineno, "expected `tm <name>`"),
                }
            }
            "states" => {
                if states.is_some() {
                    return line_err(lineno, "duplicate states line");
                }
                states = Some(fields[1..].iter().map(|s| sym(s)).collect());
            }
            "initial" => match fields.as_slice() {
                [_, q] if initial.is_none() => initial = Some(sym(q)),
                _ => return line_err(lineno, "expected `initial <state>`"),
            },
            "accept" => {
                if accepting.is_some() {
                    return line_err(lineno, "duplicate accept line");
                }
                accepting =
                    Some(fields[1..].iter().map(|s| sym(s)).collect());
            }
            "blank" => match fields.as_slice() {
                [_, s] if blank.is_none() => blank = Some(sym(s)),
                _ => return line_err(lineno, "expected `blank <symbol>`"),
            },
            "input" => {
                if tape_input.is_some() {
                    return line_err(lineno, "duplicate input line");
                }
                tape_input =
                    Some(fields[1..].iter().map(|s| sym(s)).collect());
            }
            "delta" => {
                delta_lines += 1;
                let [_, q, g, arrow, q2, g2, mv] = fields.as_slice() else {
                    return line_err(
                        lineno,
                        "expected `delta <q> <sym> -> <q'> <sym'> <L|R>`",
                    );
                };
                if *arrow != "->" {
                    return line_err(lineno, "expected `->` in delta");
                }
                let mv: Move = match *mv {
                    "R" => 1,
                    "L" => -1,
                    other => {
                        return line_err(
                            lineno,
                            format!("invalid move `{other}` (expected L or R)"),
                        )
                    }
                };
                delta.insert((sym(q), sym(g)), (sym(q2), sym(g2), mv));
            }
            other => {
                return line_err(lineno, format!("unknown directive `{other}`"))
            }
        }
    }
    if delta.len() != delta_lines {
        return line_err(0, "duplicate delta entries");
    }
    let (Some(name), Some(states), Some(initial), Some(blank)) =
        (name, states, initial, blank)
    else {
        return line_err(0, "missing tm, states, initial or blank line");
    };
    let accepting = accepting.unwrap_or_default();
    let input = tape_input.unwrap_or_default();
    let mut alphabet: BTreeSet<Sym> = BTreeSet::new();
    alphabet.insert(blank.clone());
    alphabet.extend(input.iter().cloned());
    for ((_, g), (_, g2, _)) in &delta {
        alphabet.insert(g.clone());
        alphabet.insert(g2.clone());
    }
    TuringMachine::new(
        name,
        states,
        initial,
        accepting,
        alphabet.into_iter().collect(),
        blank,
        input,
        delta,
    )
    .map_err(|e| ParseError { line: 0, message: e.to_string() })
}

/// Serialize a Turing machine; [`parse_tm`] inverts this exactly.
pub fn serialize_tm(t: &TuringMachine) -> String {
    let mut out = String::new();
    writeln!(out, "tm {}", t.name).unwrap();
    write!(out, "states").unwrap();
    for q in &t.states {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
    writeln!(out, "initial {}", t.initial).unwrap();
    write!(out, "accept").unwrap();
    for q in &t.accepting {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
    writeln!(out, "blank {}", t.blank).unwrap();
    write!(out, "input").unwrap();
    for s in &t.input {
        write!(out, " {s}").unwrap();
    }
    out.push('\n');
    for ((q, g), (q2, g2, mv)) in &t.delta {
        writeln!(
            out,
            "delta {q} {g} -> {q2} {g2} {}",
            if *mv > 0 { "R" } else { "L" }
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{busy_beaver, corpus};
    use super::*;

    #[test]
    fn corpus_round_trips() {
        for t in corpus() {
            let text = serialize_tm(&t);
            let back = parse_tm(&text).unwrap();
            assert_eq!(back, t, "round trip failed for {}", t.name);
            assert_eq!(serialize_tm(&back), text);
        }
    }

    #[test]
    fn parse_errors_have_line_numbers() {
        let e = parse_tm("tm x\nstates a\ninitial a\nblank _\ndelta a _ -> a _ X\n")
            .unwrap_err();
        assert_eq!(e.line, 5);
        assert!(parse_tm("states a\ninitial a\nblank _\n").is_err());
        // Unknown state in a transition is caught by validation.
        let e = parse_tm("tm x\nstates a\ninitial a\nblank _\ndelta a _ -> z _ R\n")
            .unwrap_err();
        assert!(e.message.contains("not declared"));
    }

    #[test]
    fn alphabet_is_rederived_canonically() {
        let t = busy_beaver();
        let back = parse_tm(&serialize_tm(&t)).unwrap();
        assert_eq!(back.tape_alphabet, t.tape_alphabet);
    }
}
