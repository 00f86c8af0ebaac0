//! Simulation and verification workbench for weak asynchronous distributed
//! automata on labelled graphs.
//!
//! The crate models finite-state machines replicated at every node of a
//! connected labelled graph. Each agent repeatedly observes a capped count of
//! its neighbours' states and applies the first matching prioritized rule.
//! On top of this generic engine sit:
//!
//! * graph families (numbered line/cycle graphs, quasi-line graphs and
//!   snowball-fight labelled lines) together with brute-force membership
//!   oracles ([`graphs`]),
//! * selection schedulers with a weak-fairness window ([`schedulers`]),
//! * left-bounded single-tape Turing machines and the "visit every cell"
//!   transformation ([`turing`]),
//! * the concrete recognizers, the Turing-head simulation, the snowball
//!   fight, product machines and the emptiness-reduction automata
//!   ([`constructions`]),
//! * a command-line surface with reproducible text formats ([`cli`]).

pub mod cli;
pub mod constructions;
pub mod engine;
pub mod graphs;
pub mod schedulers;
pub mod turing;
