//! The concrete machine constructions: family recognizers, the Turing-head
//! simulation, the snowball fight, products and the emptiness reductions.

mod nlg;
mod nqlg;
mod product;
mod reduction;
mod snowball;
mod tm_head;

pub use nlg::nlg_decider;
pub use nqlg::nqlg_decider;
pub use product::{adapt_labels, product_machine};
pub use reduction::{
    find_accepted_graph, reduction_automaton, ReductionClass, SearchHit,
    SearchOutcome,
};
pub use snowball::snowball_machine;
pub use tm_head::{encode_tm_config, tm_head_machine};
