//! Watch a Turing machine run as a distributed computation on a line.
//!
//! Each node of the line is one tape cell; the head travels by a two-step
//! handshake (announce, then hand over), so odd distributed steps show the
//! machine configurations one after another.

use distauto::constructions::tm_head_machine;
use distauto::engine::{run_synchronous, verdict_line, RunLimits};
use distauto::graphs::make_nlg;
use distauto::turing::busy_beaver;

fn main() {
    let t = busy_beaver();
    let m = tm_head_machine(&t);
    let g = make_nlg(6).unwrap();
    let limits = RunLimits::for_graph(&g).with_trace();
    let r = run_synchronous(&m, &g, limits).unwrap();
    for (i, config) in r.trace.as_ref().unwrap().iter().enumerate() {
        if i % 2 != 1 {
            continue;
        }
        let row: Vec<String> =
            config.iter().map(|q| q.to_string()).collect();
        println!("machine step {:2}: {}", i / 2, row.join(" "));
    }
    println!("{}", verdict_line(&r));
}
