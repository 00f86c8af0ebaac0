//! The emptiness sweep behind the undecidability reduction.
//!
//! For each machine class, the reduction machine built from a Turing
//! machine accepts some graph exactly when the machine halts. Sweeping
//! graph sizes finds a witness for halting machines and comes back empty
//! for diverging ones — deciding emptiness would decide halting.

use distauto::constructions::{
    find_accepted_graph, reduction_automaton, ReductionClass,
};
use distauto::turing::{inc, ping_pong};

fn main() {
    for t in [inc(2), ping_pong()] {
        println!("=== {} ===", t.name);
        for class in ReductionClass::ALL {
            let m = reduction_automaton(&t, class).unwrap();
            let out = find_accepted_graph(&m, class, 16).unwrap();
            for w in &out.warnings {
                println!("  warning: {w}");
            }
            match out.witness {
                Some(hit) => println!(
                    "  class {class}: FOUND length={}",
                    hit.length
                ),
                None => println!("  class {class}: NONE up to 16"),
            }
        }
    }
}
