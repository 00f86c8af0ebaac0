//! Product machines recognize intersections of languages.
//!
//! Pairing the line recognizer with the head simulation of a Turing
//! machine yields a machine that accepts exactly the lines long enough for
//! the machine's whole computation — the heart of the emptiness reduction.

use distauto::constructions::{nlg_decider, product_machine, tm_head_machine};
use distauto::engine::{
    run_synchronous, verdict_line, ProductMode, RunLimits,
};
use distauto::graphs::{make_ncg, make_nlg};
use distauto::turing::busy_beaver;

fn main() {
    let m = product_machine(
        nlg_decider(),
        tm_head_machine(&busy_beaver()),
        ProductMode::StableConsensus,
    )
    .unwrap();
    println!("machine: {}", m.name);
    // The busy beaver touches four cells, so four is the shortest line the
    // product accepts; cycles fail the left component outright.
    for n in 1..=6 {
        let g = make_nlg(n).unwrap();
        let r = run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
        println!("line {n}: {}", verdict_line(&r));
    }
    let g = make_ncg(6).unwrap();
    let r = run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
    println!("cycle 6: {}", verdict_line(&r));
}
