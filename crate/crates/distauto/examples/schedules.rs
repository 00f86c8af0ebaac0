//! The same machine under different fair schedulers.
//!
//! Verdicts are properties of the machine and graph, not of the schedule:
//! any weakly fair scheduler reaches the same decision, though after a
//! different number of steps.

use distauto::constructions::nlg_decider;
use distauto::engine::{run_scheduled, verdict_line, RunLimits};
use distauto::graphs::make_nlg;
use distauto::schedulers::{default_window, make_schedule, SchedulerKind};

fn main() {
    let m = nlg_decider();
    let g = make_nlg(6).unwrap();
    for kind in [
        SchedulerKind::Synchronous,
        SchedulerKind::Liberal,
        SchedulerKind::Exclusive,
    ] {
        for seed in [0, 1, 2] {
            let mut schedule =
                make_schedule(kind, &g, seed, default_window(&g)).unwrap();
            let r = run_scheduled(
                &m,
                &g,
                &mut schedule,
                RunLimits::for_graph(&g),
            )
            .unwrap();
            println!("{kind:?} seed {seed}: {}", verdict_line(&r));
        }
    }
}
