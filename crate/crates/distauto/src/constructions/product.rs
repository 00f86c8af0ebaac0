//! Combining two machines into one that runs both side by side.
//!
//! A product agent carries a pair of component states and steps each half on
//! the component counts projected out of its pairwise neighbourhood view.
//! With stable consensus both halves keep running and the pair accepts when
//! both do; with halting components the pair freezes as soon as the left
//! half rejects, so the combined machine still halts.

use crate::engine::{
    Acceptance, Detection, DistributedMachine, Kernel, MachineError,
    ProductMode, RuleSet,
};
use crate::graphs::{Alphabet, NodeLabel};

/// Combine `left` and `right` into the machine recognizing the intersection
/// of their languages.
pub fn product_machine(
    left: DistributedMachine,
    right: DistributedMachine,
    mode: ProductMode,
) -> Result<DistributedMachine, MachineError> {
    if left.alphabet != right.alphabet {
        return Err(MachineError::AlphabetMismatch {
            machine: right.name.clone(),
            expected: left.alphabet,
            found: right.alphabet,
        });
    }
    if mode == ProductMode::Halting {
        for m in [&left, &right] {
            if m.acceptance != Acceptance::Halting {
                return Err(MachineError::InvalidArgument(format!(
                    "halting product requires halting components, but {} \
                     uses stable consensus",
                    m.name
                )));
            }
        }
    }
    let beta = left.beta.max(right.beta);
    Ok(DistributedMachine {
        name: format!("{}*{}", left.name, right.name),
        alphabet: left.alphabet,
        beta,
        detection: if beta >= 2 {
            Detection::Counting
        } else {
            Detection::Existence
        },
        acceptance: match mode {
            ProductMode::StableConsensus => Acceptance::StableConsensus,
            ProductMode::Halting => Acceptance::Halting,
        },
        kernel: Kernel::Product {
            left: Box::new(left),
            right: Box::new(right),
            mode,
        },
    })
}

fn adapt_ruleset(rs: &RuleSet) -> RuleSet {
    let init = NodeLabel::inventory(Alphabet::Snowball)
        .into_iter()
        .map(|label| {
            let state = rs.init[&NodeLabel::plain(label.numbering)].clone();
            (label, state)
        })
        .collect();
    RuleSet::new(
        rs.states.clone(),
        init,
        rs.rules.clone(),
        rs.accepting.clone(),
        rs.rejecting.clone(),
    )
}

/// Re-home a plain-alphabet machine onto snowball labels: every label
/// initializes by its numbering alone, everything else is unchanged.
pub fn adapt_labels(
    m: &DistributedMachine,
) -> Result<DistributedMachine, MachineError> {
    if m.alphabet != Alphabet::Plain {
        return Err(MachineError::AlphabetMismatch {
            machine: m.name.clone(),
            expected: Alphabet::Plain,
            found: m.alphabet,
        });
    }
    let kernel = match &m.kernel {
        Kernel::Rules(rs) => Kernel::Rules(adapt_ruleset(rs)),
        Kernel::Product { left, right, mode } => Kernel::Product {
            left: Box::new(adapt_labels(left)?),
            right: Box::new(adapt_labels(right)?),
            mode: *mode,
        },
    };
    Ok(DistributedMachine {
        name: format!("{}.adapted", m.name),
        alphabet: Alphabet::Snowball,
        beta: m.beta,
        detection: m.detection,
        acceptance: m.acceptance,
        kernel,
    })
}
