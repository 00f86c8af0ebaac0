//! The unbounded-tape transform in action.
//!
//! The transform preserves halting behaviour but pads every simulated step
//! with a round trip to the tape frontier, pushing it one cell further each
//! time. A machine that never halts therefore visits unboundedly many
//! cells — which is exactly what makes the head simulation reject every
//! finite line for it.

use distauto::turing::{make_t_infinity, ping_pong, tm_run, TmOutcome};

fn main() {
    let t = ping_pong();
    let TmOutcome::Running { config, .. } = tm_run(&t, 10_000) else {
        unreachable!()
    };
    println!(
        "{}: still running after 10000 steps on {} cells",
        t.name,
        config.tape.len()
    );

    let inf = make_t_infinity(&t);
    for budget in [10, 100, 1000, 10_000] {
        let TmOutcome::Running { config, steps } = tm_run(&inf, budget)
        else {
            unreachable!()
        };
        println!(
            "{}: after {steps} steps the tape spans {} cells",
            inf.name,
            config.tape.len()
        );
    }
}
