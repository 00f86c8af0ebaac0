//! The snowball fight on harmonious lines.
//!
//! Agents throw and catch a volley of snowballs; on a harmonious labelling
//! the volley survives a full tour and drains at the left end, after which
//! a success wave sweeps the line. The trace of the smallest interesting
//! line shows the ball bouncing between the agents.

use distauto::constructions::snowball_machine;
use distauto::engine::{run_synchronous, verdict_line, RunLimits};
use distauto::graphs::make_harmonious_sfnlg;

fn main() {
    let m = snowball_machine();

    let g = make_harmonious_sfnlg(2).unwrap();
    let limits = RunLimits::for_graph(&g).with_trace();
    let r = run_synchronous(&m, &g, limits).unwrap();
    println!("order 2 ({} nodes):", g.node_count());
    for (i, config) in r.trace.as_ref().unwrap().iter().enumerate() {
        let row: Vec<String> =
            config.iter().map(|q| q.to_string()).collect();
        println!("  step {i:2}: {}", row.join("  "));
    }
    println!("  {}", verdict_line(&r));

    for k in 1..=6 {
        let g = make_harmonious_sfnlg(k).unwrap();
        let r = run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
        println!(
            "order {k} ({:3} nodes): {}",
            g.node_count(),
            verdict_line(&r)
        );
    }
}
