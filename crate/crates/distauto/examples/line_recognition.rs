//! Run the counting line recognizer on lines and cycles.
//!
//! On a line of length `n` the machine reaches a stable accepting
//! consensus after exactly `n` steps; on a numbered cycle every agent sees
//! a violation immediately and the machine stays rejecting from step 0.

use distauto::constructions::nlg_decider;
use distauto::engine::{run_synchronous, verdict_line, RunLimits};
use distauto::graphs::{make_ncg, make_nlg};

fn main() {
    let m = nlg_decider();
    for n in 1..=10 {
        let g = make_nlg(n).unwrap();
        let r = run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
        println!("line {n:2}: {}", verdict_line(&r));
    }
    for n in [3, 6, 9] {
        let g = make_ncg(n).unwrap();
        let r = run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
        println!("cycle {n:2}: {}", verdict_line(&r));
    }
}
