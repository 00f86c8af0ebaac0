//! Seeded single-step mutations, used to produce near-miss negative
//! instances for the recognizers.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GraphError, LabelledGraph, NodeLabel};

/// The supported mutation kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Replace one node's label by a different label of the same alphabet.
    RelabelNode,
    /// Insert an edge between two currently non-adjacent nodes.
    AddEdge,
    /// Remove an edge, keeping the graph connected.
    DeleteEdge,
    /// Add a twin of one node, adjacent to all of its neighbours.
    DuplicateNode,
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "relabel-node" => Ok(Mutation::RelabelNode),
            "add-edge" => Ok(Mutation::AddEdge),
            "delete-edge" => Ok(Mutation::DeleteEdge),
            "duplicate-node" => Ok(Mutation::DuplicateNode),
            _ => Err(format!(
                "unknown mutation `{s}` (expected relabel-node, add-edge, \
                 delete-edge or duplicate-node)"
            )),
        }
    }
}

impl std::fmt::Display for Mutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mutation::RelabelNode => "relabel-node",
            Mutation::AddEdge => "add-edge",
            Mutation::DeleteEdge => "delete-edge",
            Mutation::DuplicateNode => "duplicate-node",
        };
        write!(f, "{s}")
    }
}

/// Apply one random mutation of the given kind, deterministically from the
/// seed. Returns [`GraphError::NoMutation`] when no valid mutation of that
/// kind exists (for example deleting an edge of a tree).
pub fn mutate(
    g: &LabelledGraph,
    kind: Mutation,
    seed: u64,
) -> Result<LabelledGraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        Mutation::RelabelNode => {
            let v = rng.gen_range(0..g.node_count());
            let old = g.label(v);
            let choices: Vec<NodeLabel> = NodeLabel::inventory(g.alphabet())
                .into_iter()
                .filter(|&l| l != old)
                .collect();
            let new = *choices.choose(&mut rng).expect("alphabet has >1 label");
            let mut labels = g.labels().to_vec();
            labels[v] = new;
            LabelledGraph::new(labels, g.edges().to_vec())
        }
        Mutation::AddEdge => {
            let n = g.node_count();
            let mut candidates = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.neighbors(u).contains(&v) {
                        candidates.push((u, v));
                    }
                }
            }
            let &(u, v) =
                candidates.choose(&mut rng).ok_or(GraphError::NoMutation)?;
            let mut edges = g.edges().to_vec();
            edges.push((u, v));
            LabelledGraph::new(g.labels().to_vec(), edges)
        }
        Mutation::DeleteEdge => {
            let mut order: Vec<usize> = (0..g.edges().len()).collect();
            order.shuffle(&mut rng);
            for i in order {
                let mut edges = g.edges().to_vec();
                edges.remove(i);
                if let Ok(out) = LabelledGraph::new(g.labels().to_vec(), edges)
                {
                    return Ok(out);
                }
            }
            Err(GraphError::NoMutation)
        }
        Mutation::DuplicateNode => {
            let n = g.node_count();
            let candidates: Vec<usize> =
                (0..n).filter(|&v| g.degree(v) > 0).collect();
            let &v =
                candidates.choose(&mut rng).ok_or(GraphError::NoMutation)?;
            let mut labels = g.labels().to_vec();
            labels.push(g.label(v));
            let mut edges = g.edges().to_vec();
            for &w in g.neighbors(v) {
                edges.push((w, n));
            }
            LabelledGraph::new(labels, edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{classify, make_nlg, Family};
    use super::*;

    #[test]
    fn mutations_are_reproducible() {
        let g = make_nlg(8).unwrap();
        for kind in [
            Mutation::RelabelNode,
            Mutation::AddEdge,
            Mutation::DuplicateNode,
        ] {
            let a = mutate(&g, kind, 11).unwrap();
            let b = mutate(&g, kind, 11).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn impossible_mutations_are_reported() {
        let g = make_nlg(4).unwrap();
        // A path is a tree: no edge can be deleted without disconnecting.
        assert!(matches!(
            mutate(&g, Mutation::DeleteEdge, 0),
            Err(GraphError::NoMutation)
        ));
        let single = make_nlg(1).unwrap();
        assert!(matches!(
            mutate(&single, Mutation::AddEdge, 0),
            Err(GraphError::NoMutation)
        ));
        assert!(matches!(
            mutate(&single, Mutation::DuplicateNode, 0),
            Err(GraphError::NoMutation)
        ));
    }

    #[test]
    fn duplicate_node_makes_a_quasi_line() {
        let g = make_nlg(6).unwrap();
        let m = mutate(&g, Mutation::DuplicateNode, 3).unwrap();
        let r = classify(&m);
        assert_eq!(r.family, Some(Family::Nqlg));
        assert!(!r.families.contains(&Family::Nlg));
    }

    #[test]
    fn relabel_changes_exactly_one_label() {
        let g = make_nlg(9).unwrap();
        let m = mutate(&g, Mutation::RelabelNode, 7).unwrap();
        let diff = g
            .labels()
            .iter()
            .zip(m.labels())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(diff, 1);
        assert_eq!(m.edges(), g.edges());
    }
}
