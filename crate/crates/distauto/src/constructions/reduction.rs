//! Reducing the halting problem to distributed emptiness.
//!
//! For each machine class the reduction builds the product of a line-family
//! recognizer with the head simulation of the given Turing machine, wrapped
//! around the unbounded-tape transform: the product accepts some graph if
//! and only if the underlying machine halts. The accompanying search sweeps
//! the relevant graph family by increasing size, so on halting inputs it
//! finds a witness of exactly the size the computation needs.

use crate::engine::{
    run_synchronous, DistributedMachine, MachineError, ProductMode,
    RunLimits, RunResult, Verdict,
};
use crate::graphs::{
    make_harmonious_sfnlg, make_nlg, GraphError, LabelledGraph,
};
use crate::turing::{make_t_infinity, TuringMachine};

use super::{
    adapt_labels, nlg_decider, nqlg_decider, snowball_machine,
    tm_head_machine,
};

/// The three machine classes whose emptiness problem the reduction targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionClass {
    /// Counting detection with stable consensus (`DA`).
    CountingConsensus,
    /// Existence detection with stable consensus (`dA`).
    ExistenceConsensus,
    /// Counting detection with halting acceptance (`Da`).
    CountingHalting,
}

impl ReductionClass {
    pub fn code(self) -> &'static str {
        match self {
            ReductionClass::CountingConsensus => "DA",
            ReductionClass::ExistenceConsensus => "dA",
            ReductionClass::CountingHalting => "Da",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "DA" => Some(ReductionClass::CountingConsensus),
            "dA" => Some(ReductionClass::ExistenceConsensus),
            "Da" => Some(ReductionClass::CountingHalting),
            _ => None,
        }
    }

    pub const ALL: [ReductionClass; 3] = [
        ReductionClass::CountingConsensus,
        ReductionClass::ExistenceConsensus,
        ReductionClass::CountingHalting,
    ];
}

impl std::fmt::Display for ReductionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// Build the machine in the given class that accepts some graph exactly
/// when `t` halts on its input.
pub fn reduction_automaton(
    t: &TuringMachine,
    class: ReductionClass,
) -> Result<DistributedMachine, MachineError> {
    let head = tm_head_machine(&make_t_infinity(t));
    match class {
        ReductionClass::CountingConsensus => super::product_machine(
            nlg_decider(),
            head,
            ProductMode::StableConsensus,
        ),
        ReductionClass::ExistenceConsensus => super::product_machine(
            nqlg_decider(),
            head,
            ProductMode::StableConsensus,
        ),
        ReductionClass::CountingHalting => super::product_machine(
            snowball_machine(),
            adapt_labels(&head)?,
            ProductMode::Halting,
        ),
    }
}

/// An accepted graph found by the emptiness search.
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub length: usize,
    pub graph: LabelledGraph,
    pub result: RunResult,
}

/// The outcome of sweeping candidate graphs up to a size bound.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub witness: Option<SearchHit>,
    /// Candidate sizes whose run ended without a verdict, with the reason.
    pub warnings: Vec<String>,
}

fn candidate(
    class: ReductionClass,
    order: usize,
) -> Result<Option<LabelledGraph>, GraphError> {
    match class {
        ReductionClass::CountingConsensus
        | ReductionClass::ExistenceConsensus => {
            make_nlg(order).map(Some)
        }
        ReductionClass::CountingHalting => {
            // Harmonious lines have 2^k - 1 nodes; skip the gaps.
            if (order + 1).is_power_of_two() {
                let k = (order + 1).trailing_zeros() as usize;
                make_harmonious_sfnlg(k).map(Some)
            } else {
                Ok(None)
            }
        }
    }
}

/// Sweep the class's graph family by increasing size and return the first
/// accepted graph, if any exists with at most `max_length` nodes.
pub fn find_accepted_graph(
    m: &DistributedMachine,
    class: ReductionClass,
    max_length: usize,
) -> Result<SearchOutcome, MachineError> {
    let mut warnings = Vec::new();
    for order in 1..=max_length {
        let Some(graph) = candidate(class, order)
            .map_err(|e| MachineError::InvalidArgument(e.to_string()))?
        else {
            continue;
        };
        let result = run_synchronous(m, &graph, RunLimits::for_graph(&graph))?;
        match result.verdict {
            Verdict::Accepting { .. } => {
                return Ok(SearchOutcome {
                    witness: Some(SearchHit { length: order, graph, result }),
                    warnings,
                });
            }
            Verdict::Rejecting { .. } => {}
            Verdict::Undecided { steps_run } => warnings.push(format!(
                "length {order}: no verdict after {steps_run} steps"
            )),
            Verdict::Inconsistent { ref details } => warnings
                .push(format!("length {order}: inconsistent run ({details})")),
        }
    }
    Ok(SearchOutcome { witness: None, warnings })
}
