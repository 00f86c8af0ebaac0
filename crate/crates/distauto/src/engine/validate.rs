//! Static well-formedness checks for machines.

use std::collections::BTreeSet;
use std::collections::HashSet;

use crate::graphs::NodeLabel;

use super::{
    Acceptance, Atom, Detection, DistributedMachine, Kernel, Literal,
    ProductMode, RuleSet,
};

/// Check a machine and return human-readable diagnostics (empty when the
/// machine is well-formed).
///
/// Checked: disjoint accepting/rejecting sets, detection capability vs.
/// `beta`, initialization covering the whole label alphabet, rules and
/// initial states drawn from the state inventory, silence of accepting and
/// rejecting states for halting machines, and structural conditions on
/// products. Silence is checked per rule with a conservative guard
/// satisfiability test instead of enumerating views, which stays feasible
/// for machines with thousands of states.
pub fn validate_machine(m: &DistributedMachine) -> Vec<String> {
    let mut diagnostics = Vec::new();
    match m.detection {
        Detection::Existence => {
            if m.beta != 1 {
                diagnostics.push(format!(
                    "existence detection requires beta = 1, found {}",
                    m.beta
                ));
            }
        }
        Detection::Counting => {
            if m.beta < 2 {
                diagnostics.push(format!(
                    "counting detection requires beta >= 2, found {}",
                    m.beta
                ));
            }
        }
    }
    match &m.kernel {
        Kernel::Rules(rules) => validate_rules(m, rules, &mut diagnostics),
        Kernel::Product { left, right, mode } => {
            for (side, component) in [("left", left), ("right", right)] {
                for d in validate_machine(component) {
                    diagnostics.push(format!("{side} component: {d}"));
                }
                if component.alphabet != m.alphabet {
                    diagnostics.push(format!(
                        "{side} component uses the {} alphabet but the \
                         product is declared {}",
                        component.alphabet, m.alphabet
                    ));
                }
                if *mode == ProductMode::Halting
                    && component.acceptance != Acceptance::Halting
                {
                    diagnostics.push(format!(
                        "halting product requires halting components, but \
                         the {side} component uses stable consensus"
                    ));
                }
            }
            let expected = left.beta.max(right.beta);
            if m.beta != expected {
                diagnostics.push(format!(
                    "product beta must be the maximum of its components \
                     ({expected}), found {}",
                    m.beta
                ));
            }
            let expected_acceptance = match mode {
                ProductMode::Halting => Acceptance::Halting,
                ProductMode::StableConsensus => Acceptance::StableConsensus,
            };
            if m.acceptance != expected_acceptance {
                diagnostics.push(format!(
                    "product acceptance does not match its mode (expected \
                     {expected_acceptance})"
                ));
            }
        }
    }
    diagnostics
}

fn validate_rules(
    m: &DistributedMachine,
    rules: &RuleSet,
    diagnostics: &mut Vec<String>,
) {
    let inventory: HashSet<_> = rules.states.iter().collect();
    if rules.states.len() != inventory.len() {
        diagnostics.push("state inventory contains duplicates".into());
    }
    for q in rules.accepting.intersection(&rules.rejecting) {
        diagnostics.push(format!("state {q} is both accepting and rejecting"));
    }
    for set in [&rules.accepting, &rules.rejecting] {
        for q in set {
            if !inventory.contains(q) {
                diagnostics
                    .push(format!("verdict state {q} is not in the inventory"));
            }
        }
    }
    for label in NodeLabel::inventory(m.alphabet) {
        match rules.init.get(&label) {
            None => diagnostics
                .push(format!("no initial state for label `{label}`")),
            Some(q) if !inventory.contains(q) => diagnostics.push(format!(
                "initial state {q} for label `{label}` is not in the inventory"
            )),
            _ => {}
        }
    }
    for (i, rule) in rules.rules.iter().enumerate() {
        for (what, q) in [("subject", &rule.own), ("result", &rule.next)] {
            if !inventory.contains(q) {
                diagnostics.push(format!(
                    "rule {i}: {what} state {q} is not in the inventory"
                ));
            }
        }
        for lit in &rule.when {
            let (Atom::AtLeast(pattern, _) | Atom::IsZero(pattern)) =
                &lit.atom;
            for q in pattern {
                if !inventory.contains(q) {
                    diagnostics.push(format!(
                        "rule {i}: pattern state {q} is not in the inventory"
                    ));
                }
            }
        }
    }
    if m.acceptance == Acceptance::Halting {
        let verdicts: BTreeSet<_> =
            rules.accepting.union(&rules.rejecting).collect();
        for (i, rule) in rules.rules.iter().enumerate() {
            if verdicts.contains(&rule.own)
                && rule.next != rule.own
                && guard_satisfiable(&rule.when)
            {
                diagnostics.push(format!(
                    "halting machine is not silent: rule {i} can move the \
                     verdict state {} to {}",
                    rule.own, rule.next
                ));
            }
        }
    }
}

/// Conservative satisfiability of a guard: collect the states forced to
/// count zero, then require every positive demand to have a state left over.
/// Sound for the rule shapes built here; may accept guards that are
/// unsatisfiable for deeper arithmetic reasons.
fn guard_satisfiable(guard: &[Literal]) -> bool {
    let mut zeroed: HashSet<&super::MachineState> = HashSet::new();
    for lit in guard {
        match (&lit.atom, lit.negated) {
            (Atom::IsZero(pattern), false) => zeroed.extend(pattern.iter()),
            (Atom::AtLeast(pattern, 1), true) => zeroed.extend(pattern.iter()),
            _ => {}
        }
    }
    for lit in guard {
        let demands_presence = match (&lit.atom, lit.negated) {
            (Atom::AtLeast(_, k), false) => *k > 0,
            (Atom::IsZero(_), true) => true,
            _ => false,
        };
        if demands_presence {
            let (Atom::AtLeast(pattern, _) | Atom::IsZero(pattern)) =
                &lit.atom;
            if pattern.iter().all(|q| zeroed.contains(q)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use crate::graphs::Alphabet;

    use super::super::{MachineState, Rule};
    use super::*;

    fn minimal_machine(acceptance: Acceptance, rules: Vec<Rule>) -> DistributedMachine {
        let q = MachineState::Guess { numbering: 0, guess: 0 };
        let states = vec![q.clone(), MachineState::Bot, MachineState::Done];
        let init: BTreeMap<_, _> = NodeLabel::inventory(Alphabet::Plain)
            .into_iter()
            .map(|l| (l, q.clone()))
            .collect();
        DistributedMachine {
            name: "minimal".into(),
            alphabet: Alphabet::Plain,
            beta: 1,
            detection: Detection::Existence,
            acceptance,
            kernel: Kernel::Rules(RuleSet::new(
                states,
                init,
                rules,
                BTreeSet::from([MachineState::Done]),
                BTreeSet::from([MachineState::Bot]),
            )),
        }
    }

    #[test]
    fn well_formed_machine_passes() {
        let m = minimal_machine(Acceptance::StableConsensus, vec![]);
        assert!(validate_machine(&m).is_empty());
    }

    #[test]
    fn silence_violations_are_reported_for_halting_machines() {
        let noisy = Rule {
            own: MachineState::Done,
            when: vec![],
            next: MachineState::Bot,
        };
        let m = minimal_machine(Acceptance::Halting, vec![noisy]);
        let d = validate_machine(&m);
        assert!(d.iter().any(|s| s.contains("not silent")), "{d:?}");

        // The same rule guarded by an unsatisfiable condition is fine.
        let guarded = Rule {
            own: MachineState::Done,
            when: vec![
                Literal::pos(Atom::IsZero(vec![MachineState::Bot])),
                Literal::pos(Atom::AtLeast(vec![MachineState::Bot], 1)),
            ],
            next: MachineState::Bot,
        };
        let m = minimal_machine(Acceptance::Halting, vec![guarded]);
        assert!(validate_machine(&m).is_empty());
    }

    #[test]
    fn detection_and_inventory_mismatches_are_reported() {
        let mut m = minimal_machine(Acceptance::StableConsensus, vec![]);
        m.beta = 2;
        let d = validate_machine(&m);
        assert!(d.iter().any(|s| s.contains("beta")));

        let stray = Rule {
            own: MachineState::Guess { numbering: 2, guess: 1 },
            when: vec![],
            next: MachineState::Done,
        };
        let m = minimal_machine(Acceptance::StableConsensus, vec![stray]);
        let d = validate_machine(&m);
        assert!(d.iter().any(|s| s.contains("not in the inventory")));
    }
}
