//! Text formats for states, machines and run traces.
//!
//! States use a compact functional syntax (`guess(0,1)`, `head(x,2,q0,H+1)`,
//! `pair(ok,bot)`). A machine file lists a header, the state inventory with
//! accept/reject marks, the initialization map and the prioritized rules:
//!
//! ```text
//! machine nlg-decider detection D acceptance A beta 2 alphabet plain
//! state guess(0,0) reject
//! init 0 guess(0,0)
//! rule 0 guess(0,0) | count({guess(0,0),guess(0,1)}) >= 1 -> bot
//! ```
//!
//! Traces list one configuration per line followed by a verdict footer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::graphs::{Alphabet, NodeLabel, ParseError};

use super::run::{Configuration, RunResult, Verdict};
use super::{
    Acceptance, Atom, Detection, DistributedMachine, HeadMode, Kernel,
    Literal, MachineError, MachineState, Rule, RuleSet,
};

// ---------------------------------------------------------------------------
// State syntax
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_spaces(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, expected: u8) -> Result<(), String> {
        match self.bump() {
            Some(c) if c == expected => Ok(()),
            other => Err(format!(
                "expected `{}` at byte {}, found {:?}",
                expected as char,
                self.pos.saturating_sub(1),
                other.map(|c| c as char)
            )),
        }
    }

    fn eat_str(&mut self, expected: &str) -> Result<(), String> {
        for &b in expected.as_bytes() {
            self.eat(b)?;
        }
        Ok(())
    }

    /// A token: anything up to a delimiter or whitespace.
    fn token(&mut self) -> Result<&'a str, String> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if matches!(c, b'(' | b')' | b',' | b'{' | b'}' | b'|' | b' ' | b'\t')
            {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(format!("expected a token at byte {start}"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T, String> {
        let t = self.token()?;
        t.parse().map_err(|_| format!("invalid number `{t}`"))
    }

    fn at_end(&self) -> bool {
        self.pos == self.s.len()
    }
}

fn parse_facing(token: &str) -> Result<i8, String> {
    match token {
        "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("invalid facing `{token}` (expected +1 or -1)")),
    }
}

fn parse_state_inner(cur: &mut Cursor<'_>) -> Result<MachineState, String> {
    let head = cur.token()?;
    let state = match head {
        "bot" => MachineState::Bot,
        "ok" => MachineState::Done,
        "box" => MachineState::Intent,
        "guess" => {
            cur.eat(b'(')?;
            let numbering: u8 = cur.number()?;
            cur.eat(b',')?;
            let guess: u8 = cur.number()?;
            cur.eat(b')')?;
            MachineState::Guess { numbering, guess }
        }
        "stage" => {
            cur.eat(b'(')?;
            let numbering: u8 = cur.number()?;
            cur.eat(b',')?;
            let stage: u8 = cur.number()?;
            cur.eat(b')')?;
            MachineState::Stage { numbering, stage }
        }
        "rawcell" | "cell" => {
            cur.eat(b'(')?;
            let symbol: Arc<str> = Arc::from(cur.token()?);
            cur.eat(b',')?;
            let numbering: u8 = cur.number()?;
            cur.eat(b')')?;
            if head == "rawcell" {
                MachineState::RawCell { symbol, numbering }
            } else {
                MachineState::Cell { symbol, numbering }
            }
        }
        "head" => {
            cur.eat(b'(')?;
            let symbol: Arc<str> = Arc::from(cur.token()?);
            cur.eat(b',')?;
            let numbering: u8 = cur.number()?;
            cur.eat(b',')?;
            let tm_state: Arc<str> = Arc::from(cur.token()?);
            cur.eat(b',')?;
            let mode = match cur.token()? {
                "H" => HeadMode::Settled,
                "H+1" => HeadMode::MoveRight,
                "H-1" => HeadMode::MoveLeft,
                other => return Err(format!("invalid head mode `{other}`")),
            };
            cur.eat(b')')?;
            MachineState::Head { symbol, numbering, tm_state, mode }
        }
        "rawsf" | "sf" => {
            cur.eat(b'(')?;
            let numbering: u8 = cur.number()?;
            cur.eat(b',')?;
            let facing = parse_facing(cur.token()?)?;
            cur.eat(b',')?;
            let ball: u8 = cur.number()?;
            cur.eat(b')')?;
            if head == "rawsf" {
                MachineState::RawFight { numbering, facing, ball }
            } else {
                MachineState::Fight { numbering, facing, ball }
            }
        }
        "pair" => {
            cur.eat(b'(')?;
            let a = parse_state_inner(cur)?;
            cur.eat(b',')?;
            let b = parse_state_inner(cur)?;
            cur.eat(b')')?;
            MachineState::pair(a, b)
        }
        other => return Err(format!("unknown state constructor `{other}`")),
    };
    Ok(state)
}

/// Parse a single state; the whole input must be consumed.
pub fn parse_state(input: &str) -> Result<MachineState, String> {
    let mut cur = Cursor::new(input.trim());
    let state = parse_state_inner(&mut cur)?;
    if !cur.at_end() {
        return Err(format!("trailing input after state in `{input}`"));
    }
    Ok(state)
}

// ---------------------------------------------------------------------------
// Guard syntax
// ---------------------------------------------------------------------------

fn write_pattern(out: &mut String, pattern: &[MachineState]) {
    out.push('{');
    for (i, q) in pattern.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{q}").unwrap();
    }
    out.push('}');
}

fn write_guard(out: &mut String, guard: &[Literal]) {
    if guard.is_empty() {
        out.push_str("true");
        return;
    }
    for (i, lit) in guard.iter().enumerate() {
        if i > 0 {
            out.push_str(" & ");
        }
        if lit.negated {
            out.push('!');
        }
        out.push_str("count(");
        match &lit.atom {
            Atom::AtLeast(pattern, k) => {
                write_pattern(out, pattern);
                write!(out, ") >= {k}").unwrap();
            }
            Atom::IsZero(pattern) => {
                write_pattern(out, pattern);
                out.push_str(") == 0");
            }
        }
    }
}

fn parse_pattern(cur: &mut Cursor<'_>) -> Result<Vec<MachineState>, String> {
    cur.eat(b'{')?;
    let mut pattern = Vec::new();
    loop {
        pattern.push(parse_state_inner(cur)?);
        match cur.bump() {
            Some(b',') => continue,
            Some(b'}') => break,
            other => {
                return Err(format!(
                    "expected `,` or `}}` in pattern, found {:?}",
                    other.map(|c| c as char)
                ))
            }
        }
    }
    Ok(pattern)
}

fn parse_guard(input: &str) -> Result<Vec<Literal>, String> {
    let trimmed = input.trim();
    if trimmed == "true" {
        return Ok(Vec::new());
    }
    let mut guard = Vec::new();
    let mut cur = Cursor::new(trimmed);
    loop {
        cur.skip_spaces();
        let negated = cur.peek() == Some(b'!');
        if negated {
            cur.bump();
        }
        cur.eat_str("count(")?;
        let pattern = parse_pattern(&mut cur)?;
        cur.eat(b')')?;
        cur.skip_spaces();
        let op_ge = match cur.peek() {
            Some(b'>') => {
                cur.eat_str(">=")?;
                true
            }
            Some(b'=') => {
                cur.eat_str("==")?;
                false
            }
            other => {
                return Err(format!(
                    "expected `>=` or `==`, found {:?}",
                    other.map(|c| c as char)
                ))
            }
        };
        cur.skip_spaces();
        let k: u32 = cur.number()?;
        let atom = if op_ge {
            Atom::AtLeast(pattern, k)
        } else if k == 0 {
            Atom::IsZero(pattern)
        } else {
            return Err("only comparisons `== 0` are supported".into());
        };
        guard.push(Literal { negated, atom });
        cur.skip_spaces();
        if cur.at_end() {
            break;
        }
        cur.eat(b'&')?;
    }
    Ok(guard)
}

// ---------------------------------------------------------------------------
// Machine files
// ---------------------------------------------------------------------------

/// Serialize a flat machine. Product machines have no file representation
/// (their components do) and return an error.
pub fn serialize_machine(
    m: &DistributedMachine,
) -> Result<String, MachineError> {
    let Kernel::Rules(rules) = &m.kernel else {
        return Err(MachineError::Unsupported(format!(
            "machine `{}` is a product; serialize its components instead",
            m.name
        )));
    };
    let mut out = String::new();
    writeln!(
        out,
        "machine {} detection {} acceptance {} beta {} alphabet {}",
        m.name, m.detection, m.acceptance, m.beta, m.alphabet
    )
    .unwrap();
    for q in &rules.states {
        let mark = if rules.accepting.contains(q) {
            " accept"
        } else if rules.rejecting.contains(q) {
            " reject"
        } else {
            ""
        };
        writeln!(out, "state {q}{mark}").unwrap();
    }
    for (label, q) in &rules.init {
        writeln!(out, "init {label} {q}").unwrap();
    }
    for (i, rule) in rules.rules.iter().enumerate() {
        let mut line = format!("rule {i} {} | ", rule.own);
        write_guard(&mut line, &rule.when);
        write!(line, " -> {}", rule.next).unwrap();
        writeln!(out, "{line}").unwrap();
    }
    Ok(out)
}

fn line_err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parse the machine file format written by [`serialize_machine`].
pub fn parse_machine(input: &str) -> Result<DistributedMachine, ParseError> {
    let mut header: Option<(String, Detection, Acceptance, u8, Alphabet)> =
        None;
    let mut states: Vec<MachineState> = Vec::new();
    let mut accepting: BTreeSet<MachineState> = BTreeSet::new();
    let mut rejecting: BTreeSet<MachineState> = BTreeSet::new();
    let mut init: BTreeMap<NodeLabel, MachineState> = BTreeMap::new();
    let mut rules: Vec<Rule> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (directive, rest) = match line.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (line, ""),
        };
        match directive {
            "machine" => {
                if header.is_some() {
                    return line_err(lineno, "duplicate machine header");
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 9
                    || fields[1] != "detection"
                    || fields[3] != "acceptance"
                    || fields[5] != "beta"
                    || fields[7] != "alphabet"
                {
                    return line_err(
                        lineno,
                        "expected `machine <name> detection <d|D> acceptance \
                         <a|A> beta <k> alphabet <plain|snowball>`",
                    );
                }
                let detection = match fields[2] {
                    "d" => Detection::Existence,
                    "D" => Detection::Counting,
                    other => {
                        return line_err(
                            lineno,
                            format!("invalid detection `{other}`"),
                        )
                    }
                };
                let acceptance = match fields[4] {
                    "a" => Acceptance::Halting,
                    "A" => Acceptance::StableConsensus,
                    other => {
                        return line_err(
                            lineno,
                            format!("invalid acceptance `{other}`"),
                        )
                    }
                };
                let beta: u8 = fields[6].parse().map_err(|_| ParseError {
                    line: lineno,
                    message: format!("invalid beta `{}`", fields[6]),
                })?;
                let alphabet = match fields[8] {
                    "plain" => Alphabet::Plain,
                    "snowball" => Alphabet::Snowball,
                    other => {
                        return line_err(
                            lineno,
                            format!("invalid alphabet `{other}`"),
                        )
                    }
                };
                header = Some((
                    fields[0].to_string(),
                    detection,
                    acceptance,
                    beta,
                    alphabet,
                ));
            }
            "state" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.is_empty() || fields.len() > 2 {
                    return line_err(
                        lineno,
                        "expected `state <state> [accept|reject]`",
                    );
                }
                let q = parse_state(fields[0])
                    .map_err(|m| ParseError { line: lineno, message: m })?;
                match fields.get(1) {
                    Some(&"accept") => {
                        accepting.insert(q.clone());
                    }
                    Some(&"reject") => {
                        rejecting.insert(q.clone());
                    }
                    Some(other) => {
                        return line_err(
                            lineno,
                            format!("invalid state mark `{other}`"),
                        )
                    }
                    None => {}
                }
                states.push(q);
            }
            "init" => {
                let Some((_, _, _, _, alphabet)) = header.as_ref() else {
                    return line_err(lineno, "init before machine header");
                };
                let alphabet = *alphabet;
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let (label_fields, state_field) = match fields.split_last() {
                    Some((s, l)) if !l.is_empty() => (l, *s),
                    _ => {
                        return line_err(
                            lineno,
                            "expected `init <label> <state>`",
                        )
                    }
                };
                let label = parse_label(label_fields, alphabet)
                    .map_err(|m| ParseError { line: lineno, message: m })?;
                let q = parse_state(state_field)
                    .map_err(|m| ParseError { line: lineno, message: m })?;
                if init.insert(label, q).is_some() {
                    return line_err(
                        lineno,
                        format!("duplicate init for label `{label}`"),
                    );
                }
            }
            "rule" => {
                let (prio, rest) = match rest.split_once(char::is_whitespace) {
                    Some((p, r)) => (p, r.trim()),
                    None => return line_err(lineno, "truncated rule"),
                };
                let prio: usize = prio.parse().map_err(|_| ParseError {
                    line: lineno,
                    message: format!("invalid rule priority `{prio}`"),
                })?;
                if prio != rules.len() {
                    return line_err(
                        lineno,
                        format!(
                            "rule priorities must be sequential: expected \
                             {}, found {prio}",
                            rules.len()
                        ),
                    );
                }
                let (own_text, rest) = match rest.split_once('|') {
                    Some((o, r)) => (o.trim(), r),
                    None => {
                        return line_err(lineno, "rule is missing its guard")
                    }
                };
                let (guard_text, next_text) = match rest.rsplit_once("->") {
                    Some((g, n)) => (g.trim(), n.trim()),
                    None => {
                        return line_err(lineno, "rule is missing its result")
                    }
                };
                let own = parse_state(own_text)
                    .map_err(|m| ParseError { line: lineno, message: m })?;
                let when = parse_guard(guard_text)
                    .map_err(|m| ParseError { line: lineno, message: m })?;
                let next = parse_state(next_text)
                    .map_err(|m| ParseError { line: lineno, message: m })?;
                rules.push(Rule { own, when, next });
            }
            other => {
                return line_err(
                    lineno,
                    format!("unknown directive `{other}`"),
                )
            }
        }
    }

    let Some((name, detection, acceptance, beta, alphabet)) = header else {
        return line_err(0, "missing machine header");
    };
    Ok(DistributedMachine {
        name,
        alphabet,
        beta,
        detection,
        acceptance,
        kernel: Kernel::Rules(RuleSet::new(
            states, init, rules, accepting, rejecting,
        )),
    })
}

fn parse_label(fields: &[&str], alphabet: Alphabet) -> Result<NodeLabel, String> {
    let numbering: u8 = fields
        .first()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n < 3)
        .ok_or_else(|| "label numbering must be 0, 1 or 2".to_string())?;
    match (alphabet, fields.len()) {
        (Alphabet::Plain, 1) => Ok(NodeLabel::plain(numbering)),
        (Alphabet::Snowball, 3) => {
            let facing = parse_facing(fields[1])?;
            let ball: u8 = fields[2]
                .parse()
                .ok()
                .filter(|&b| b < 2)
                .ok_or_else(|| "ball bit must be 0 or 1".to_string())?;
            Ok(NodeLabel::snowball(numbering, facing, ball))
        }
        _ => Err(format!(
            "label has {} field(s), which does not fit the {alphabet} \
             alphabet",
            fields.len()
        )),
    }
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

fn verdict_kind(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Accepting { .. } => "ACCEPTING",
        Verdict::Rejecting { .. } => "REJECTING",
        Verdict::Undecided { .. } => "UNDECIDED",
        Verdict::Inconsistent { .. } => "INCONSISTENT",
    }
}

/// The footer line summarizing a run, as used by [`render_trace`].
pub fn verdict_line(result: &RunResult) -> String {
    let step = match &result.verdict {
        Verdict::Accepting { first_stable_step }
        | Verdict::Rejecting { first_stable_step } => *first_stable_step,
        Verdict::Undecided { steps_run } => *steps_run,
        Verdict::Inconsistent { .. } => {
            result.cycle.map(|c| c.start).unwrap_or(result.steps)
        }
    };
    format!("verdict {} step {step}", verdict_kind(&result.verdict))
}

/// Render a recorded run as a step-by-step trace with a verdict footer.
pub fn render_trace(result: &RunResult) -> Result<String, MachineError> {
    let Some(trace) = &result.trace else {
        return Err(MachineError::Unsupported(
            "run was executed without trace recording".into(),
        ));
    };
    let mut out = String::new();
    for (i, config) in trace.iter().enumerate() {
        write!(out, "step {i}").unwrap();
        for (v, q) in config.iter().enumerate() {
            write!(out, " {v}:{q}").unwrap();
        }
        out.push('\n');
    }
    out.push_str(&verdict_line(result));
    out.push('\n');
    Ok(out)
}

/// A trace read back from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTrace {
    pub configurations: Vec<Configuration>,
    pub verdict_kind: String,
    pub verdict_step: usize,
}

/// Parse the format written by [`render_trace`].
pub fn parse_trace(input: &str) -> Result<ParsedTrace, ParseError> {
    let mut configurations: Vec<Configuration> = Vec::new();
    let mut verdict: Option<(String, usize)> = None;
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if verdict.is_some() {
            return line_err(lineno, "content after the verdict footer");
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "step" => {
                let i: usize =
                    fields.get(1).and_then(|s| s.parse().ok()).ok_or(
                        ParseError {
                            line: lineno,
                            message: "expected `step <i> ...`".into(),
                        },
                    )?;
                if i != configurations.len() {
                    return line_err(
                        lineno,
                        format!(
                            "expected step {}, found {i}",
                            configurations.len()
                        ),
                    );
                }
                let mut config = Vec::new();
                for entry in &fields[2..] {
                    let Some((node, state)) = entry.split_once(':') else {
                        return line_err(
                            lineno,
                            format!("expected `<node>:<state>`, got `{entry}`"),
                        );
                    };
                    let node: usize = node.parse().map_err(|_| ParseError {
                        line: lineno,
                        message: format!("invalid node id `{node}`"),
                    })?;
                    if node != config.len() {
                        return line_err(
                            lineno,
                            format!("node ids must be sequential, got {node}"),
                        );
                    }
                    config.push(parse_state(state).map_err(|m| ParseError {
                        line: lineno,
                        message: m,
                    })?);
                }
                configurations.push(config);
            }
            "verdict" => {
                if fields.len() != 4 || fields[2] != "step" {
                    return line_err(
                        lineno,
                        "expected `verdict <KIND> step <k>`",
                    );
                }
                let step: usize =
                    fields[3].parse().map_err(|_| ParseError {
                        line: lineno,
                        message: format!("invalid step `{}`", fields[3]),
                    })?;
                verdict = Some((fields[1].to_string(), step));
            }
            other => {
                return line_err(lineno, format!("unknown directive `{other}`"))
            }
        }
    }
    let Some((verdict_kind, verdict_step)) = verdict else {
        return line_err(0, "trace is missing its verdict footer");
    };
    Ok(ParsedTrace { configurations, verdict_kind, verdict_step })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_syntax_round_trips() {
        let samples = [
            "bot",
            "ok",
            "box",
            "guess(0,1)",
            "stage(2,0)",
            "rawcell(_,0)",
            "cell(x.v,2)",
            "head(_,1,q0.sweep,H+1)",
            "rawsf(0,+1,1)",
            "sf(2,-1,0)",
            "pair(guess(1,0),head(_,0,q0,H))",
            "pair(pair(bot,ok),sf(0,-1,1))",
        ];
        for s in samples {
            let state = parse_state(s).unwrap();
            assert_eq!(state.to_string(), s);
        }
        assert!(parse_state("guess(0)").is_err());
        assert!(parse_state("nope(1)").is_err());
        assert!(parse_state("ok extra").is_err());
    }

    #[test]
    fn guard_syntax_round_trips() {
        let guards = [
            "true",
            "count({bot}) >= 1",
            "count({guess(0,0),guess(0,1)}) == 0",
            "!count({rawsf(0,+1,1),rawsf(1,-1,1)}) >= 2 & count({box}) == 0",
        ];
        for g in guards {
            let parsed = parse_guard(g).unwrap();
            let mut out = String::new();
            write_guard(&mut out, &parsed);
            assert_eq!(out, g);
        }
        assert!(parse_guard("count({bot}) == 3").is_err());
        assert!(parse_guard("count(bot) >= 1").is_err());
    }

    #[test]
    fn trace_round_trips() {
        let result = RunResult {
            verdict: Verdict::Accepting { first_stable_step: 1 },
            steps: 2,
            cycle: None,
            trace: Some(vec![
                vec![
                    MachineState::Guess { numbering: 0, guess: 0 },
                    MachineState::Guess { numbering: 1, guess: 0 },
                ],
                vec![
                    MachineState::Guess { numbering: 0, guess: 1 },
                    MachineState::Guess { numbering: 1, guess: 1 },
                ],
            ]),
        };
        let text = render_trace(&result).unwrap();
        let parsed = parse_trace(&text).unwrap();
        assert_eq!(parsed.configurations, result.trace.clone().unwrap());
        assert_eq!(parsed.verdict_kind, "ACCEPTING");
        assert_eq!(parsed.verdict_step, 1);
    }
}
