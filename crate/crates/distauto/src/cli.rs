//! Command-line surface over the generators, machines, runners and the
//! emptiness search.
//!
//! All randomness sits behind explicit `--seed` flags (default 0), so every
//! command is deterministic given its full flag set. Run-style commands map
//! their verdict onto the exit code: 0 accepting, 1 rejecting, 3 undecided,
//! 4 inconsistent; usage and I/O errors exit with 2.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::constructions::{
    find_accepted_graph, nlg_decider, nqlg_decider, reduction_automaton,
    snowball_machine, tm_head_machine, ReductionClass,
};
use crate::engine::{
    parse_machine, parse_trace, render_trace, run_scheduled, serialize_machine,
    validate_machine, verdict_line, DistributedMachine, Kernel, RunLimits,
    RunResult, Verdict,
};
use crate::graphs::{
    classify, make_harmonious_sfnlg, make_ncg, make_nlg, make_nqlg,
    parse_graph, serialize_graph, EdgePolicy, LabelledGraph,
};
use crate::schedulers::{default_window, make_schedule, SchedulerKind};
use crate::turing::{make_t_infinity, parse_tm, serialize_tm, tm_run, TmOutcome};

#[derive(Parser)]
#[command(
    name = "distauto",
    about = "Simulate distributed automata on labelled graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from one of the built-in families.
    Generate(GenerateArgs),
    /// Validate and describe a graph, machine or trace file.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Run a machine on a graph and report the verdict.
    Run(RunArgs),
    /// Compile a machine reference into its file representation.
    CompileMachine(CompileArgs),
    /// Run a Turing machine directly.
    TmRun(TmRunArgs),
    /// Rewrite a Turing machine into its never-halting-on-bounded-tape
    /// variant with the same halting behaviour.
    Tinf(TinfArgs),
    /// Build the emptiness-reduction machine for a Turing machine and
    /// describe it.
    Reduce(ReduceArgs),
    /// Sweep the graph family of a class for a graph the reduction machine
    /// accepts.
    Search(SearchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// One of: nlg, ncg, nqlg, sfnlg-harmonious.
    family: String,
    /// Size parameter (length for lines/cycles, order for harmonious
    /// lines).
    #[arg(long)]
    n: Option<usize>,
    /// Layer sizes for nqlg, e.g. `--counts 1,2,2,1`.
    #[arg(long, value_delimiter = ',')]
    counts: Option<Vec<usize>>,
    /// Edge policy for nqlg: full or random.
    #[arg(long, default_value = "full")]
    edges: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the graph here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Parse a graph file and print its family classification.
    Graph { path: PathBuf },
    /// Parse a machine file and print validation diagnostics.
    Machine { machine_ref: String },
    /// Re-run a recorded trace and verify it reproduces bit for bit.
    Trace {
        path: PathBuf,
        #[arg(long)]
        machine: String,
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        sched: SchedFlags,
    },
}

#[derive(Args)]
struct SchedFlags {
    /// Scheduler: synchronous, liberal or exclusive.
    #[arg(long, default_value = "synchronous")]
    scheduler: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fairness window (default: four times the node count).
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// nlg | nqlg | snowball | tm-head:<tm-path> | reduce:<class>:<tm-path>
    /// | a machine file path.
    machine_ref: String,
    graph: PathBuf,
    #[command(flatten)]
    sched: SchedFlags,
    /// Print the full configuration trace, not only the verdict.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    max_steps: Option<usize>,
}

#[derive(Args)]
struct CompileArgs {
    machine_ref: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TmRunArgs {
    tm: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
}

#[derive(Args)]
struct TinfArgs {
    tm: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    tm: PathBuf,
    /// Machine class: DA, dA or Da.
    #[arg(long)]
    class: String,
}

#[derive(Args)]
struct SearchArgs {
    tm: PathBuf,
    /// Machine class: DA, dA or Da.
    #[arg(long)]
    class: String,
    #[arg(long, default_value_t = 32)]
    max_length: usize,
    /// Write the witness graph here when one is found.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point; returns the process exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Check(args) => cmd_check(args),
        Command::Run(args) => cmd_run(args),
        Command::CompileMachine(args) => cmd_compile(args),
        Command::TmRun(args) => cmd_tm_run(args),
        Command::Tinf(args) => cmd_tinf(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Search(args) => cmd_search(args),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_out(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn parse_class(code: &str) -> Result<ReductionClass, String> {
    ReductionClass::from_code(code)
        .ok_or_else(|| format!("unknown class `{code}` (expected DA, dA or Da)"))
}

fn load_tm(path: &Path) -> Result<crate::turing::TuringMachine, String> {
    parse_tm(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<LabelledGraph, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Resolve a machine reference: a builtin name, an on-the-fly compilation
/// of a Turing machine, or a machine file. Compiled head machines are
/// cached under the system temp directory, keyed by the source digest.
fn resolve_machine(machine_ref: &str) -> Result<DistributedMachine, String> {
    match machine_ref {
        "nlg" => return Ok(nlg_decider()),
        "nqlg" => return Ok(nqlg_decider()),
        "snowball" => return Ok(snowball_machine()),
        _ => {}
    }
    if let Some(path) = machine_ref.strip_prefix("tm-head:") {
        return compile_head_cached(Path::new(path));
    }
    if let Some(rest) = machine_ref.strip_prefix("reduce:") {
        let (code, path) = rest
            .split_once(':')
            .ok_or("expected reduce:<class>:<tm-path>")?;
        let t = load_tm(Path::new(path))?;
        return reduction_automaton(&t, parse_class(code)?)
            .map_err(|e| e.to_string());
    }
    let text = read(Path::new(machine_ref))?;
    parse_machine(&text).map_err(|e| format!("{machine_ref}: {e}"))
}

fn compile_head_cached(path: &Path) -> Result<DistributedMachine, String> {
    let source = read(path)?;
    let digest = Sha256::digest(source.as_bytes());
    let cache_dir = std::env::temp_dir().join("distauto-cache");
    let cached = cache_dir.join(format!("{digest:x}.machine"));
    if let Ok(text) = std::fs::read_to_string(&cached) {
        if let Ok(m) = parse_machine(&text) {
            return Ok(m);
        }
    }
    let t = parse_tm(&source).map_err(|e| format!("{}: {e}", path.display()))?;
    let m = tm_head_machine(&t);
    if std::fs::create_dir_all(&cache_dir).is_ok() {
        let text = serialize_machine(&m).map_err(|e| e.to_string())?;
        let _ = std::fs::write(&cached, text);
    }
    Ok(m)
}

fn exit_for(verdict: &Verdict) -> ExitCode {
    match verdict {
        Verdict::Accepting { .. } => ExitCode::from(0),
        Verdict::Rejecting { .. } => ExitCode::from(1),
        Verdict::Undecided { .. } => ExitCode::from(3),
        Verdict::Inconsistent { .. } => ExitCode::from(4),
    }
}

fn execute(
    m: &DistributedMachine,
    g: &LabelledGraph,
    sched: &SchedFlags,
    max_steps: Option<usize>,
    record_trace: bool,
) -> Result<RunResult, String> {
    let kind: SchedulerKind = sched.scheduler.parse()?;
    let window = sched.window.unwrap_or_else(|| default_window(g));
    let mut schedule =
        make_schedule(kind, g, sched.seed, window).map_err(|e| e.to_string())?;
    let mut limits = RunLimits::for_graph(g);
    if let Some(n) = max_steps {
        limits = limits.with_max_steps(n);
    }
    if record_trace {
        limits = limits.with_trace();
    }
    run_scheduled(m, g, &mut schedule, limits).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode, String> {
    let need_n = || {
        args.n.ok_or_else(|| {
            format!("family `{}` requires --n", args.family)
        })
    };
    let g = match args.family.as_str() {
        "nlg" => make_nlg(need_n()?),
        "ncg" => make_ncg(need_n()?),
        "sfnlg-harmonious" => make_harmonious_sfnlg(need_n()?),
        "nqlg" => {
            let counts = args
                .counts
                .as_deref()
                .ok_or("family `nqlg` requires --counts")?;
            let policy = match args.edges.as_str() {
                "full" => EdgePolicy::FullBipartite,
                "random" => EdgePolicy::Random { seed: args.seed },
                other => {
                    return Err(format!(
                        "unknown edge policy `{other}` (expected full or \
                         random)"
                    ))
                }
            };
            make_nqlg(counts, policy)
        }
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(|e| e.to_string())?;

    let report = classify(&g);
    let summary = match (report.family, report.length) {
        (Some(family), Some(length)) => format!("{family} length {length}"),
        (Some(family), None) => format!("{family}"),
        _ => "unclassified".to_string(),
    };
    let text = serialize_graph(&g);
    match &args.out {
        Some(path) => {
            write_out(path, &text)?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckCommand) -> Result<ExitCode, String> {
    match args {
        CheckCommand::Graph { path } => {
            let g = load_graph(&path)?;
            let report = classify(&g);
            println!(
                "graph {} nodes {} edges {}",
                g.alphabet(),
                g.node_count(),
                g.edges().len()
            );
            for family in &report.families {
                println!("family {family}");
            }
            if let Some(length) = report.length {
                println!("length {length}");
            }
            for violation in &report.violations {
                println!("violation: {violation}");
            }
            if report.member {
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not a member of any family");
                Ok(ExitCode::from(1))
            }
        }
        CheckCommand::Machine { machine_ref } => {
            let m = resolve_machine(&machine_ref)?;
            println!(
                "machine {} detection {} acceptance {} beta {} alphabet {}",
                m.name, m.detection, m.acceptance, m.beta, m.alphabet
            );
            let diagnostics = validate_machine(&m);
            for d in &diagnostics {
                println!("problem: {d}");
            }
            if diagnostics.is_empty() {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        CheckCommand::Trace { path, machine, graph, sched } => {
            let recorded = parse_trace(&read(&path)?)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let m = resolve_machine(&machine)?;
            let g = load_graph(&graph)?;
            let steps = recorded.configurations.len().saturating_sub(1);
            let result = execute(&m, &g, &sched, Some(steps.max(1)), true)?;
            let replayed = result.trace.as_deref().unwrap_or(&[]);
            if replayed.len() < recorded.configurations.len()
                || replayed[..recorded.configurations.len()]
                    != recorded.configurations[..]
            {
                println!("mismatch: configurations diverge from the replay");
                return Ok(ExitCode::from(1));
            }
            // The footer must match a full re-run (not cut off by the
            // trace length), so run again without the step cap.
            let full = execute(&m, &g, &sched, None, false)?;
            let footer = verdict_line(&full);
            let expected = format!(
                "verdict {} step {}",
                recorded.verdict_kind, recorded.verdict_step
            );
            if footer != expected {
                println!("mismatch: replay ended with `{footer}`, trace \
                          recorded `{expected}`");
                return Ok(ExitCode::from(1));
            }
            println!("replay ok");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, String> {
    let m = resolve_machine(&args.machine_ref)?;
    let g = load_graph(&args.graph)?;
    let result = execute(&m, &g, &args.sched, args.max_steps, args.trace)?;
    if args.trace {
        print!("{}", render_trace(&result).map_err(|e| e.to_string())?);
    } else {
        println!("{}", verdict_line(&result));
    }
    if let Verdict::Inconsistent { details } = &result.verdict {
        eprintln!("inconsistent: {details}");
    }
    Ok(exit_for(&result.verdict))
}

fn cmd_compile(args: CompileArgs) -> Result<ExitCode, String> {
    let m = resolve_machine(&args.machine_ref)?;
    if matches!(m.kernel, Kernel::Product { .. }) {
        return Err(format!(
            "machine `{}` is a product and has no file representation; use \
             `reduce` for a component summary",
            m.name
        ));
    }
    let text = serialize_machine(&m).map_err(|e| e.to_string())?;
    match &args.out {
        Some(path) => {
            write_out(path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tm_run(args: TmRunArgs) -> Result<ExitCode, String> {
    let t = load_tm(&args.tm)?;
    match tm_run(&t, args.max_steps) {
        TmOutcome::Halts { steps, cells_visited, config } => {
            println!(
                "halts after {steps} steps in state {} visiting \
                 {cells_visited} cells",
                config.state
            );
            Ok(ExitCode::SUCCESS)
        }
        TmOutcome::Running { steps, .. } => {
            println!("still running after {steps} steps");
            Ok(ExitCode::from(3))
        }
        TmOutcome::BoundaryViolation { steps } => {
            println!("moved left of the first cell after {steps} steps");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_tinf(args: TinfArgs) -> Result<ExitCode, String> {
    let t = load_tm(&args.tm)?;
    let text = serialize_tm(&make_t_infinity(&t));
    match &args.out {
        Some(path) => {
            write_out(path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn describe(m: &DistributedMachine, role: &str) {
    match &m.kernel {
        Kernel::Rules(rules) => println!(
            "{role} {} detection {} acceptance {} beta {} states {} rules {}",
            m.name,
            m.detection,
            m.acceptance,
            m.beta,
            rules.states.len(),
            rules.rules.len()
        ),
        Kernel::Product { left, right, .. } => {
            println!(
                "{role} {} detection {} acceptance {} beta {}",
                m.name, m.detection, m.acceptance, m.beta
            );
            describe(left, "  component");
            describe(right, "  component");
        }
    }
}

fn cmd_reduce(args: ReduceArgs) -> Result<ExitCode, String> {
    let t = load_tm(&args.tm)?;
    let class = parse_class(&args.class)?;
    let m = reduction_automaton(&t, class).map_err(|e| e.to_string())?;
    println!("class {class}");
    describe(&m, "machine");
    let diagnostics = validate_machine(&m);
    for d in &diagnostics {
        println!("problem: {d}");
    }
    if diagnostics.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, String> {
    let t = load_tm(&args.tm)?;
    let class = parse_class(&args.class)?;
    let m = reduction_automaton(&t, class).map_err(|e| e.to_string())?;
    let outcome = find_accepted_graph(&m, class, args.max_length)
        .map_err(|e| e.to_string())?;
    for warning in &outcome.warnings {
        println!("warning: {warning}");
    }
    match outcome.witness {
        Some(hit) => {
            println!("FOUND length={}", hit.length);
            if let Some(path) = &args.out {
                write_out(path, &serialize_graph(&hit.graph))?;
                println!("witness {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        None if outcome.warnings.is_empty() => {
            println!("NONE up to {}", args.max_length);
            Ok(ExitCode::from(1))
        }
        None => {
            println!("NONE up to {}", args.max_length);
            Ok(ExitCode::from(3))
        }
    }
}
