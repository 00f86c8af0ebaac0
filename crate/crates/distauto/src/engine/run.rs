//! Executing machines on graphs: synchronous runs with cycle detection and
//! scheduled runs with fixpoint detection.

use std::collections::{BTreeMap, HashMap};

use crate::graphs::LabelledGraph;
use crate::schedulers::{Schedule, SchedulerKind};

use super::{DistributedMachine, MachineError, MachineState, NeighborhoodView};

/// One state per node, indexed by node id.
pub type Configuration = Vec<MachineState>;

/// Where a synchronous run entered a configuration cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleInfo {
    /// First step index inside the cycle.
    pub start: usize,
    /// Cycle length (>= 1; a fixpoint has length 1).
    pub len: usize,
}

/// Verdict of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every configuration from `first_stable_step` on is fully accepting.
    Accepting { first_stable_step: usize },
    /// Every configuration from `first_stable_step` on is fully rejecting.
    Rejecting { first_stable_step: usize },
    /// The step budget ran out before the run settled.
    Undecided { steps_run: usize },
    /// The run repeats forever without reaching a consensus.
    Inconsistent { details: String },
}

impl Verdict {
    /// The step number reported in the trace footer.
    pub fn step(&self) -> usize {
        match self {
            Verdict::Accepting { first_stable_step }
            | Verdict::Rejecting { first_stable_step } => *first_stable_step,
            Verdict::Undecided { steps_run } => *steps_run,
            Verdict::Inconsistent { .. } => 0,
        }
    }
}

/// Outcome of a run.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub verdict: Verdict,
    /// Number of steps actually simulated.
    pub steps: usize,
    /// Cycle location, when a synchronous run closed one.
    pub cycle: Option<CycleInfo>,
    /// Configurations for steps `0..=steps` when tracing was requested.
    pub trace: Option<Vec<Configuration>>,
}

/// Budgets for a run.
#[derive(Clone, Copy, Debug)]
pub struct RunLimits {
    pub max_steps: usize,
    /// How many configurations the cycle detector may store before falling
    /// back to Brent's constant-memory algorithm.
    pub max_stored_configs: usize,
    pub record_trace: bool,
}

impl RunLimits {
    /// Default budget: `10 * n^2 + 1000` steps for an `n`-node graph.
    pub fn for_graph(g: &LabelledGraph) -> RunLimits {
        let n = g.node_count();
        RunLimits {
            max_steps: 10 * n * n + 1000,
            max_stored_configs: 1 << 16,
            record_trace: false,
        }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> RunLimits {
        self.max_steps = max_steps;
        self
    }

    pub fn with_trace(mut self) -> RunLimits {
        self.record_trace = true;
        self
    }

    pub fn with_max_stored_configs(mut self, max: usize) -> RunLimits {
        self.max_stored_configs = max;
        self
    }
}

/// The capped view of node `v`'s neighbourhood under configuration `config`.
pub fn neighborhood_view(
    g: &LabelledGraph,
    config: &Configuration,
    v: usize,
    beta: u8,
) -> NeighborhoodView {
    NeighborhoodView::from_states(
        g.neighbors(v).iter().map(|&w| &config[w]),
        beta,
    )
}

/// The initial configuration of `m` on `g`.
pub fn init_configuration(
    m: &DistributedMachine,
    g: &LabelledGraph,
) -> Result<Configuration, MachineError> {
    if m.alphabet != g.alphabet() {
        return Err(MachineError::AlphabetMismatch {
            machine: m.name.clone(),
            expected: m.alphabet,
            found: g.alphabet(),
        });
    }
    g.labels().iter().map(|&l| m.init_state(l)).collect()
}

/// Apply one step in which exactly the nodes of `selection` act.
pub fn step(
    m: &DistributedMachine,
    g: &LabelledGraph,
    config: &Configuration,
    selection: &[usize],
) -> Result<Configuration, MachineError> {
    if config.len() != g.node_count() {
        return Err(MachineError::InvalidArgument(format!(
            "configuration has {} states for a {}-node graph",
            config.len(),
            g.node_count()
        )));
    }
    let mut next = config.clone();
    for &v in selection {
        if v >= g.node_count() {
            return Err(MachineError::InvalidArgument(format!(
                "selection references unknown node {v}"
            )));
        }
        let view = neighborhood_view(g, config, v, m.beta);
        next[v] = m.transition(&config[v], &view);
    }
    Ok(next)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    AllAccepting,
    AllRejecting,
    Mixed,
}

/// Interning simulator: states become dense ids and local transitions are
/// memoized on (own id, capped neighbour count vector).
struct Sim<'a> {
    machine: &'a DistributedMachine,
    graph: &'a LabelledGraph,
    states: Vec<MachineState>,
    ids: HashMap<MachineState, u32>,
    accepting: Vec<bool>,
    rejecting: Vec<bool>,
    memo: HashMap<(u32, Vec<(u32, u32)>), u32>,
}

impl<'a> Sim<'a> {
    fn new(machine: &'a DistributedMachine, graph: &'a LabelledGraph) -> Self {
        Sim {
            machine,
            graph,
            states: Vec::new(),
            ids: HashMap::new(),
            accepting: Vec::new(),
            rejecting: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn intern(&mut self, q: MachineState) -> u32 {
        if let Some(&id) = self.ids.get(&q) {
            return id;
        }
        let id = self.states.len() as u32;
        self.accepting.push(self.machine.is_accepting(&q));
        self.rejecting.push(self.machine.is_rejecting(&q));
        self.ids.insert(q.clone(), id);
        self.states.push(q);
        id
    }

    fn intern_config(
        &mut self,
        config: &Configuration,
    ) -> Vec<u32> {
        config.iter().map(|q| self.intern(q.clone())).collect()
    }

    fn uninterned(&self, config: &[u32]) -> Configuration {
        config.iter().map(|&id| self.states[id as usize].clone()).collect()
    }

    /// Sorted, capped per-state neighbour counts of `v`.
    fn local_key(&self, config: &[u32], v: usize) -> Vec<(u32, u32)> {
        let beta = self.machine.beta as u32;
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &w in self.graph.neighbors(v) {
            let c = counts.entry(config[w]).or_insert(0);
            *c = (*c + 1).min(beta);
        }
        counts.into_iter().collect()
    }

    fn next_id(&mut self, own: u32, key: Vec<(u32, u32)>) -> u32 {
        if let Some(&id) = self.memo.get(&(own, key.clone())) {
            return id;
        }
        let view = NeighborhoodView::from_counts(
            key.iter()
                .map(|&(id, c)| (self.states[id as usize].clone(), c))
                .collect(),
        );
        let next =
            self.machine.transition(&self.states[own as usize], &view);
        let next_id = self.intern(next);
        self.memo.insert((own, key), next_id);
        next_id
    }

    fn step_all(&mut self, config: &[u32]) -> Vec<u32> {
        (0..config.len())
            .map(|v| {
                let key = self.local_key(config, v);
                self.next_id(config[v], key)
            })
            .collect()
    }

    fn step_selected(&mut self, config: &[u32], selection: &[usize]) -> Vec<u32> {
        let mut next = config.to_vec();
        for &v in selection {
            let key = self.local_key(config, v);
            next[v] = self.next_id(config[v], key);
        }
        next
    }

    fn status(&self, config: &[u32]) -> Status {
        if config.iter().all(|&id| self.accepting[id as usize]) {
            Status::AllAccepting
        } else if config.iter().all(|&id| self.rejecting[id as usize]) {
            Status::AllRejecting
        } else {
            Status::Mixed
        }
    }
}

fn classify_cycle(statuses: &[Status], start: usize, len: usize) -> Verdict {
    let cycle = &statuses[start..start + len];
    let stable_from = |statuses: &[Status], want: Status| {
        let mut first = start;
        while first > 0 && statuses[first - 1] == want {
            first -= 1;
        }
        first
    };
    if cycle.iter().all(|&s| s == Status::AllAccepting) {
        Verdict::Accepting {
            first_stable_step: stable_from(statuses, Status::AllAccepting),
        }
    } else if cycle.iter().all(|&s| s == Status::AllRejecting) {
        Verdict::Rejecting {
            first_stable_step: stable_from(statuses, Status::AllRejecting),
        }
    } else {
        let acc = cycle.iter().filter(|&&s| s == Status::AllAccepting).count();
        let rej = cycle.iter().filter(|&&s| s == Status::AllRejecting).count();
        Verdict::Inconsistent {
            details: format!(
                "run cycles over {len} configuration(s) from step {start} \
                 without consensus ({acc} all-accepting, {rej} all-rejecting, \
                 {} mixed)",
                len - acc - rej
            ),
        }
    }
}

/// Run with every agent selected at every step. Detects configuration
/// cycles (hash map of seen configurations, Brent's algorithm once the
/// storage budget is exhausted) and classifies them into a verdict.
pub fn run_synchronous(
    m: &DistributedMachine,
    g: &LabelledGraph,
    limits: RunLimits,
) -> Result<RunResult, MachineError> {
    let mut sim = Sim::new(m, g);
    let start = init_configuration(m, g)?;
    let mut config = sim.intern_config(&start);
    let mut statuses = vec![sim.status(&config)];
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    seen.insert(config.clone(), 0);
    let mut trace: Option<Vec<Vec<u32>>> =
        limits.record_trace.then(|| vec![config.clone()]);

    let mut cycle: Option<CycleInfo> = None;
    let mut steps_simulated = 0usize;
    for i in 1..=limits.max_steps {
        let next = sim.step_all(&config);
        steps_simulated = i;
        if let Some(t) = trace.as_mut() {
            t.push(next.clone());
        }
        if let Some(&j) = seen.get(&next) {
            cycle = Some(CycleInfo { start: j, len: i - j });
            break;
        }
        statuses.push(sim.status(&next));
        if seen.len() < limits.max_stored_configs {
            seen.insert(next.clone(), i);
        } else {
            // Storage exhausted: switch to Brent's constant-memory cycle
            // finder for the remaining budget.
            return run_brent(m, g, limits, sim, next, i, seen);
        }
        config = next;
    }

    finish_synchronous(sim, limits, statuses, cycle, steps_simulated, trace)
}

fn finish_synchronous(
    sim: Sim<'_>,
    limits: RunLimits,
    statuses: Vec<Status>,
    cycle: Option<CycleInfo>,
    steps_simulated: usize,
    trace: Option<Vec<Vec<u32>>>,
) -> Result<RunResult, MachineError> {
    let trace =
        trace.map(|t| t.iter().map(|c| sim.uninterned(c)).collect());
    match cycle {
        Some(info) => Ok(RunResult {
            verdict: classify_cycle(&statuses, info.start, info.len),
            steps: steps_simulated,
            cycle: Some(info),
            trace,
        }),
        None => Ok(RunResult {
            verdict: Verdict::Undecided { steps_run: limits.max_steps },
            steps: steps_simulated,
            cycle: None,
            trace,
        }),
    }
}

/// Brent fallback: find the cycle length with a power-of-two tortoise, then
/// locate the cycle start, and finally replay from the initial configuration
/// to collect the statuses needed for classification. `x0` is the
/// configuration at step `s0`. Transitions are memoized, so the replay is
/// cheap compared to the first pass.
fn run_brent(
    m: &DistributedMachine,
    g: &LabelledGraph,
    limits: RunLimits,
    mut sim: Sim<'_>,
    x0: Vec<u32>,
    s0: usize,
    seen: HashMap<Vec<u32>, usize>,
) -> Result<RunResult, MachineError> {
    // Phase 1: cycle length. Stored configurations still serve as a shortcut
    // for cycles that started before the storage budget ran out.
    let mut power = 1usize;
    let mut lam = 0usize;
    let mut taken = 0usize;
    let mut tortoise = x0.clone();
    let mut hare = x0.clone();
    let mut early: Option<CycleInfo> = None;
    loop {
        if s0 + taken >= limits.max_steps {
            return finish_synchronous(
                sim,
                limits,
                Vec::new(),
                None,
                limits.max_steps,
                None,
            );
        }
        hare = sim.step_all(&hare);
        lam += 1;
        taken += 1;
        if let Some(&j) = seen.get(&hare) {
            early = Some(CycleInfo { start: j, len: s0 + taken - j });
            break;
        }
        if hare == tortoise {
            break;
        }
        if lam == power {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
    }

    let info = match early {
        Some(info) => info,
        None => {
            // Phase 2: cycle start relative to x0.
            let mut ahead = x0.clone();
            for _ in 0..lam {
                ahead = sim.step_all(&ahead);
            }
            let mut behind = x0;
            let mut mu = 0usize;
            while ahead != behind {
                ahead = sim.step_all(&ahead);
                behind = sim.step_all(&behind);
                mu += 1;
            }
            CycleInfo { start: s0 + mu, len: lam }
        }
    };

    // Replay from the start for statuses (and the trace, when requested).
    let needed = info.start + info.len;
    let start = init_configuration(m, g)?;
    let mut config = sim.intern_config(&start);
    let mut statuses = vec![sim.status(&config)];
    let mut trace: Option<Vec<Vec<u32>>> =
        limits.record_trace.then(|| vec![config.clone()]);
    for _ in 0..needed {
        config = sim.step_all(&config);
        statuses.push(sim.status(&config));
        if let Some(t) = trace.as_mut() {
            t.push(config.clone());
        }
    }
    statuses.pop();
    // statuses covers steps 0..needed, exactly what classification reads.
    finish_synchronous(sim, limits, statuses, Some(info), needed, trace)
}

/// Run under an explicit schedule. Synchronous schedules delegate to
/// [`run_synchronous`] so the two entry points agree exactly; other
/// schedules stop at frozen consensus configurations or when the budget
/// runs out.
pub fn run_scheduled(
    m: &DistributedMachine,
    g: &LabelledGraph,
    schedule: &mut Schedule,
    limits: RunLimits,
) -> Result<RunResult, MachineError> {
    if schedule.node_count() != g.node_count() {
        return Err(MachineError::InvalidArgument(format!(
            "schedule is for {} nodes but the graph has {}",
            schedule.node_count(),
            g.node_count()
        )));
    }
    if schedule.kind() == SchedulerKind::Synchronous {
        return run_synchronous(m, g, limits);
    }
    let mut sim = Sim::new(m, g);
    let start = init_configuration(m, g)?;
    let mut config = sim.intern_config(&start);
    let mut statuses = vec![sim.status(&config)];
    let mut trace: Option<Vec<Vec<u32>>> =
        limits.record_trace.then(|| vec![config.clone()]);

    for i in 0..=limits.max_steps {
        // A decided configuration that a full step leaves unchanged stays
        // decided under every future selection.
        let status = sim.status(&config);
        if status != Status::Mixed && sim.step_all(&config) == config {
            let want = status;
            let mut first = i;
            while first > 0 && statuses[first - 1] == want {
                first -= 1;
            }
            let verdict = match status {
                Status::AllAccepting => {
                    Verdict::Accepting { first_stable_step: first }
                }
                Status::AllRejecting => {
                    Verdict::Rejecting { first_stable_step: first }
                }
                Status::Mixed => unreachable!(),
            };
            let trace =
                trace.map(|t| t.iter().map(|c| sim.uninterned(c)).collect());
            return Ok(RunResult { verdict, steps: i, cycle: None, trace });
        }
        if i == limits.max_steps {
            break;
        }
        let selection = schedule.next_selection();
        config = sim.step_selected(&config, &selection);
        statuses.push(sim.status(&config));
        if let Some(t) = trace.as_mut() {
            t.push(config.clone());
        }
    }
    let trace = trace.map(|t| t.iter().map(|c| sim.uninterned(c)).collect());
    Ok(RunResult {
        verdict: Verdict::Undecided { steps_run: limits.max_steps },
        steps: limits.max_steps,
        cycle: None,
        trace,
    })
}
