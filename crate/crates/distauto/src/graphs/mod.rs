//! Labelled graphs, the generated graph families and their membership
//! oracles.
//!
//! A [`LabelledGraph`] is a finite, connected, simple, undirected graph whose
//! nodes carry either a plain numbering label (an element of `Z_3`) or a
//! snowball label (a numbering plus a facing direction and a ball bit).
//! Generators produce the numbered line graphs, numbered cycle graphs,
//! numbered quasi-line graphs and the harmonious snowball-fight lines used by
//! the emptiness reductions; [`classify`] is the independent brute-force
//! membership oracle for all five families.

mod classify;
mod format;
mod generate;
mod mutate;

pub use classify::{classify, dist_from_set, Family, FamilyReport};
pub use format::{parse_graph, serialize_graph, ParseError};
pub use generate::{
    make_harmonious_sfnlg, make_ncg, make_nlg, make_nqlg, EdgePolicy,
};
pub use mutate::{mutate, Mutation};

use std::fmt;

/// Which label alphabet a graph (or machine) uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// Numbering labels: elements of `Z_3`.
    Plain,
    /// Numbering plus a facing direction in `{-1,+1}` and a ball bit.
    Snowball,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Plain => write!(f, "plain"),
            Alphabet::Snowball => write!(f, "snowball"),
        }
    }
}

/// The snowball-specific part of a node label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FightLabel {
    /// Facing direction, `-1` or `+1`.
    pub facing: i8,
    /// Ball bit, `0` or `1`.
    pub ball: u8,
}

/// A node label: a numbering in `Z_3`, optionally extended with snowball
/// components. All nodes of one graph use the same alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeLabel {
    pub numbering: u8,
    pub fight: Option<FightLabel>,
}

impl NodeLabel {
    pub fn plain(numbering: u8) -> Self {
        assert!(numbering < 3, "numbering must be in Z_3");
        NodeLabel { numbering, fight: None }
    }

    pub fn snowball(numbering: u8, facing: i8, ball: u8) -> Self {
        assert!(numbering < 3, "numbering must be in Z_3");
        assert!(facing == -1 || facing == 1, "facing must be -1 or +1");
        assert!(ball < 2, "ball bit must be 0 or 1");
        NodeLabel { numbering, fight: Some(FightLabel { facing, ball }) }
    }

    pub fn alphabet(&self) -> Alphabet {
        if self.fight.is_some() { Alphabet::Snowball } else { Alphabet::Plain }
    }

    /// All labels of the given alphabet, in canonical order.
    pub fn inventory(alphabet: Alphabet) -> Vec<NodeLabel> {
        let mut out = Vec::new();
        for n in 0..3 {
            match alphabet {
                Alphabet::Plain => out.push(NodeLabel::plain(n)),
                Alphabet::Snowball => {
                    for facing in [-1, 1] {
                        for ball in 0..2 {
                            out.push(NodeLabel::snowball(n, facing, ball));
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fight {
            None => write!(f, "{}", self.numbering),
            Some(s) => write!(
                f,
                "{} {} {}",
                self.numbering,
                if s.facing > 0 { "+1" } else { "-1" },
                s.ball
            ),
        }
    }
}

/// Errors raised when building or transforming graphs.
#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge references unknown node {0}")]
    UnknownNode(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("nodes mix plain and snowball labels")]
    MixedAlphabets,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no valid mutation of the requested kind exists for this graph")]
    NoMutation,
}

/// A finite, connected, simple, undirected, labelled graph.
///
/// Nodes are identified by dense indices `0..node_count()`. Validity
/// (non-empty, no self-loops or duplicate edges, connected, one alphabet) is
/// enforced eagerly by [`LabelledGraph::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    labels: Vec<NodeLabel>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl LabelledGraph {
    pub fn new(
        labels: Vec<NodeLabel>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::Empty);
        }
        let alphabet = labels[0].alphabet();
        if labels.iter().any(|l| l.alphabet() != alphabet) {
            return Err(GraphError::MixedAlphabets);
        }
        let n = labels.len();
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n {
                return Err(GraphError::UnknownNode(u));
            }
            if v >= n {
                return Err(GraphError::UnknownNode(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            normalized.push(key);
        }
        normalized.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let g = LabelledGraph { labels, edges: normalized, adjacency };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> NodeLabel {
        self.labels[v]
    }

    /// Edges as normalized `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.labels[0].alphabet()
    }

    fn is_connected(&self) -> bool {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// Projection of a snowball graph onto its numbering components.
    /// Plain graphs are returned unchanged.
    pub fn numbering_projection(&self) -> LabelledGraph {
        if self.alphabet() == Alphabet::Plain {
            return self.clone();
        }
        let labels =
            self.labels.iter().map(|l| NodeLabel::plain(l.numbering)).collect();
        LabelledGraph::new(labels, self.edges.clone())
            .expect("projection of a valid graph is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_graphs() {
        let l = |n| NodeLabel::plain(n);
        assert!(matches!(
            LabelledGraph::new(vec![], vec![]),
            Err(GraphError::Empty)
        ));
        assert!(matches!(
            LabelledGraph::new(vec![l(0), l(1)], vec![(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            LabelledGraph::new(vec![l(0), l(1)], vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            LabelledGraph::new(vec![l(0), l(1)], vec![(0, 2)]),
            Err(GraphError::UnknownNode(2))
        ));
        assert!(matches!(
            LabelledGraph::new(vec![l(0), l(1)], vec![]),
            Err(GraphError::Disconnected)
        ));
        assert!(matches!(
            LabelledGraph::new(
                vec![l(0), NodeLabel::snowball(1, 1, 0)],
                vec![(0, 1)]
            ),
            Err(GraphError::MixedAlphabets)
        ));
    }

    #[test]
    fn single_node_graph_is_valid() {
        let g = LabelledGraph::new(vec![NodeLabel::plain(0)], vec![]).unwrap();
        assert_eq!(g.node_count(), 1);
        assert!(g.neighbors(0).is_empty());
    }

    #[test]
    fn adjacency_matches_edges() {
        let l = |n| NodeLabel::plain(n);
        let g = LabelledGraph::new(
            vec![l(0), l(1), l(2)],
            vec![(2, 0), (0, 1)],
        )
        .unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 1);
    }
}
