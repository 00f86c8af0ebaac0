//! Run the existence-only recognizer on quasi-lines.
//!
//! Without counting, an agent cannot tell one identically-labelled
//! neighbour from several, so whole distance layers behave like single
//! nodes: the machine accepts every numbered quasi-line, stabilizing in
//! twice the number of layers.

use distauto::constructions::nqlg_decider;
use distauto::engine::{run_synchronous, verdict_line, RunLimits};
use distauto::graphs::{make_nqlg, EdgePolicy};

fn main() {
    let m = nqlg_decider();
    for counts in [
        vec![1],
        vec![1, 1, 1, 1],
        vec![1, 2, 2, 1],
        vec![1, 3, 1, 2, 2],
        vec![2, 4, 3],
    ] {
        let g = make_nqlg(&counts, EdgePolicy::FullBipartite).unwrap();
        let r = run_synchronous(&m, &g, RunLimits::for_graph(&g)).unwrap();
        println!(
            "layers {:?} ({} nodes): {}",
            counts,
            g.node_count(),
            verdict_line(&r)
        );
    }
}
