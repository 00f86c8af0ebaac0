//! Selection schedulers with a weak-fairness window.
//!
//! A schedule emits, per step, the set of agents allowed to act. All
//! randomness is derived from an explicit seed, so schedules are
//! reproducible and cloneable mid-run. Every schedule guarantees that each
//! agent is selected at least once in any `window` consecutive steps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphs::LabelledGraph;

/// The built-in scheduler kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchedulerKind {
    /// Every agent acts at every step.
    Synchronous,
    /// Independent coin flip per agent and step, with forced selection of
    /// any agent that would otherwise starve past the fairness window.
    Liberal,
    /// Exactly one agent acts per step, cycling through the nodes in id
    /// order. Requires `window >= node_count`.
    Exclusive,
}

impl std::str::FromStr for SchedulerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "synchronous" => Ok(SchedulerKind::Synchronous),
            "liberal" => Ok(SchedulerKind::Liberal),
            "exclusive" => Ok(SchedulerKind::Exclusive),
            _ => Err(format!(
                "unknown scheduler `{s}` (expected synchronous, liberal or \
                 exclusive)"
            )),
        }
    }
}

/// Errors raised when constructing a schedule.
#[derive(Debug, thiserror::Error)]
pub enum ScheduleError {
    #[error(
        "exclusive scheduling of {nodes} nodes needs a fairness window of at \
         least {nodes}, got {window}"
    )]
    WindowTooSmall { nodes: usize, window: usize },
    #[error("the fairness window must be positive")]
    EmptyWindow,
}

/// A reproducible stream of agent selections.
#[derive(Clone, Debug)]
pub struct Schedule {
    kind: SchedulerKind,
    node_count: usize,
    window: usize,
    rng: ChaCha8Rng,
    step: usize,
    /// Step at which each agent was last selected (`-1`: never).
    last_selected: Vec<i64>,
}

/// Default fairness window for a graph: four times the node count.
pub fn default_window(g: &LabelledGraph) -> usize {
    4 * g.node_count()
}

/// Build a schedule for the nodes of `g`. The seed only matters for the
/// liberal scheduler; the window bounds how long any agent may go
/// unselected.
pub fn make_schedule(
    kind: SchedulerKind,
    g: &LabelledGraph,
    seed: u64,
    window: usize,
) -> Result<Schedule, ScheduleError> {
    if window == 0 {
        return Err(ScheduleError::EmptyWindow);
    }
    if kind == SchedulerKind::Exclusive && window < g.node_count() {
        return Err(ScheduleError::WindowTooSmall {
            nodes: g.node_count(),
            window,
        });
    }
    Ok(Schedule {
        kind,
        node_count: g.node_count(),
        window,
        rng: ChaCha8Rng::seed_from_u64(seed),
        step: 0,
        last_selected: vec![-1; g.node_count()],
    })
}

impl Schedule {
    pub fn kind(&self) -> SchedulerKind {
        self.kind
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// The selection for the next step, in increasing node order.
    pub fn next_selection(&mut self) -> Vec<usize> {
        let step = self.step as i64;
        let selection: Vec<usize> = match self.kind {
            SchedulerKind::Synchronous => (0..self.node_count).collect(),
            SchedulerKind::Exclusive => {
                vec![self.step % self.node_count]
            }
            SchedulerKind::Liberal => (0..self.node_count)
                .filter(|&v| {
                    // Force any agent whose last selection is a full window
                    // behind; otherwise flip a fair coin.
                    let overdue =
                        step - self.last_selected[v] >= self.window as i64;
                    let coin = self.rng.gen_bool(0.5);
                    overdue || coin
                })
                .collect(),
        };
        for &v in &selection {
            self.last_selected[v] = step;
        }
        self.step += 1;
        selection
    }
}
