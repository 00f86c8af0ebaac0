//! Brute-force membership oracle for the graph families.

use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::fmt;

use super::{Alphabet, GraphError, LabelledGraph};

/// The recognized graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Numbered line graph.
    Nlg,
    /// Numbered cycle graph.
    Ncg,
    /// Numbered quasi-line graph.
    Nqlg,
    /// Snowball-fight labelled line (any facing/ball word over a numbered
    /// line).
    Sfnlg,
    /// Snowball-fight labelled cycle.
    Sfncg,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Nlg => "nlg",
            Family::Ncg => "ncg",
            Family::Nqlg => "nqlg",
            Family::Sfnlg => "sfnlg",
            Family::Sfncg => "sfncg",
        };
        write!(f, "{s}")
    }
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    /// Whether the graph belongs to at least one family.
    pub member: bool,
    /// The most specific family (lines before cycles before quasi-lines).
    pub family: Option<Family>,
    /// Every family the graph belongs to (a numbered line is also a
    /// quasi-line).
    pub families: BTreeSet<Family>,
    /// The family length parameter: path/cycle length, or the number of
    /// distance layers of a quasi-line.
    pub length: Option<usize>,
    /// The origin set of a (quasi-)line, when one is defined.
    pub origin_set: Option<BTreeSet<usize>>,
    /// Labelled explanations for non-membership.
    pub violations: Vec<String>,
}

/// Breadth-first distances from a non-empty set of source nodes.
pub fn dist_from_set(
    g: &LabelledGraph,
    sources: &BTreeSet<usize>,
) -> Result<Vec<usize>, GraphError> {
    if sources.is_empty() {
        return Err(GraphError::InvalidArgument(
            "source set must be non-empty".into(),
        ));
    }
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if s >= n {
            return Err(GraphError::UnknownNode(s));
        }
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    // The graph is connected, so every node is reached.
    debug_assert!(dist.iter().all(|&d| d != usize::MAX));
    Ok(dist)
}

/// Decide membership in every graph family by direct definition checking.
pub fn classify(g: &LabelledGraph) -> FamilyReport {
    match g.alphabet() {
        Alphabet::Plain => classify_plain(g),
        Alphabet::Snowball => classify_snowball(g),
    }
}

fn classify_plain(g: &LabelledGraph) -> FamilyReport {
    let mut families = BTreeSet::new();
    let mut length = None;
    let mut origin_set = None;
    let mut violations = Vec::new();

    match quasi_line_check(g) {
        Ok((layers, origins)) => {
            families.insert(Family::Nqlg);
            let singleton_layers = {
                let dist = dist_from_set(g, &origins).expect("origins valid");
                let mut count = vec![0usize; layers];
                for &d in &dist {
                    count[d] += 1;
                }
                count.iter().all(|&c| c == 1)
            };
            if singleton_layers {
                families.insert(Family::Nlg);
            }
            length = Some(layers);
            origin_set = Some(origins);
        }
        Err(v) => violations.extend(v),
    }

    match cycle_check(g) {
        Ok(n) => {
            families.insert(Family::Ncg);
            length = Some(n);
            violations.clear();
        }
        Err(v) => {
            if families.is_empty() {
                violations.push(v);
            }
        }
    }

    let family = if families.contains(&Family::Nlg) {
        Some(Family::Nlg)
    } else if families.contains(&Family::Ncg) {
        Some(Family::Ncg)
    } else if families.contains(&Family::Nqlg) {
        Some(Family::Nqlg)
    } else {
        None
    };
    FamilyReport {
        member: family.is_some(),
        family,
        families,
        length,
        origin_set,
        violations,
    }
}

fn classify_snowball(g: &LabelledGraph) -> FamilyReport {
    let projection = classify_plain(&g.numbering_projection());
    let (family, mut violations) = if projection.families.contains(&Family::Nlg)
    {
        (Some(Family::Sfnlg), Vec::new())
    } else if projection.families.contains(&Family::Ncg) {
        (Some(Family::Sfncg), Vec::new())
    } else {
        (
            None,
            vec![
                "SF: numbering projection is neither a numbered line nor a \
                 numbered cycle"
                    .to_string(),
            ],
        )
    };
    violations.extend(projection.violations);
    FamilyReport {
        member: family.is_some(),
        family,
        families: family.iter().copied().collect(),
        length: if family.is_some() { projection.length } else { None },
        origin_set: if family == Some(Family::Sfnlg) {
            projection.origin_set
        } else {
            None
        },
        violations,
    }
}

/// Check the three quasi-line conditions against the label-derived origin
/// set. Returns the number of distance layers and the origin set.
fn quasi_line_check(
    g: &LabelledGraph,
) -> Result<(usize, BTreeSet<usize>), Vec<String>> {
    let origins: BTreeSet<usize> = (0..g.node_count())
        .filter(|&v| {
            g.label(v).numbering == 0
                && g.neighbors(v).iter().all(|&w| g.label(w).numbering != 2)
        })
        .collect();
    if origins.is_empty() {
        return Err(vec![
            "QL1: no origin node (numbered 0 with no neighbour numbered 2)"
                .to_string(),
        ]);
    }
    let dist = dist_from_set(g, &origins).expect("origins are valid sources");
    let layers = dist.iter().max().copied().unwrap_or(0) + 1;
    let mut violations = Vec::new();
    for v in 0..g.node_count() {
        let expected = (dist[v] % 3) as u8;
        if g.label(v).numbering != expected {
            violations.push(format!(
                "QL1: node {v} is numbered {} but lies at distance {} from \
                 the origin set",
                g.label(v).numbering,
                dist[v]
            ));
        }
    }
    for &(u, v) in g.edges() {
        if g.label(u).numbering == g.label(v).numbering {
            violations.push(format!(
                "QL2: adjacent nodes {u} and {v} share numbering {}",
                g.label(u).numbering
            ));
        }
    }
    for v in 0..g.node_count() {
        if dist[v] + 1 < layers
            && !g.neighbors(v).iter().any(|&w| dist[w] == dist[v] + 1)
        {
            violations.push(format!(
                "QL3: node {v} at distance {} has no successor although \
                 deeper layers exist",
                dist[v]
            ));
        }
    }
    if violations.is_empty() {
        Ok((layers, origins))
    } else {
        Err(violations)
    }
}

/// Check the numbered cycle conditions: 2-regular, and every node has
/// exactly one neighbour numbered one above and one numbered one below.
fn cycle_check(g: &LabelledGraph) -> Result<usize, String> {
    let n = g.node_count();
    if n < 3 {
        return Err(format!("NCG: {n} node(s) cannot form a cycle"));
    }
    for v in 0..n {
        if g.degree(v) != 2 {
            return Err(format!(
                "NCG: node {v} has degree {} instead of 2",
                g.degree(v)
            ));
        }
        let m = g.label(v).numbering;
        let up = (m + 1) % 3;
        let down = (m + 2) % 3;
        let nums: Vec<u8> =
            g.neighbors(v).iter().map(|&w| g.label(w).numbering).collect();
        if !(nums.contains(&up) && nums.contains(&down)) {
            return Err(format!(
                "NCG: node {v} numbered {m} has neighbours numbered \
                 {nums:?} instead of one {up} and one {down}"
            ));
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::super::{
        make_harmonious_sfnlg, make_ncg, make_nlg, make_nqlg, EdgePolicy,
        NodeLabel,
    };
    use super::*;

    #[test]
    fn lines_classify_as_lines_and_quasi_lines() {
        for n in 1..=30 {
            let r = classify(&make_nlg(n).unwrap());
            assert!(r.member, "length {n}");
            assert_eq!(r.family, Some(Family::Nlg));
            assert!(r.families.contains(&Family::Nqlg));
            assert_eq!(r.length, Some(n));
            assert_eq!(r.origin_set, Some(BTreeSet::from([0])));
            assert!(r.violations.is_empty());
        }
    }

    #[test]
    fn cycles_classify_as_cycles_only() {
        for n in [3, 6, 9, 30] {
            let r = classify(&make_ncg(n).unwrap());
            assert_eq!(r.family, Some(Family::Ncg));
            assert_eq!(r.families, BTreeSet::from([Family::Ncg]));
            assert_eq!(r.length, Some(n));
            assert_eq!(r.origin_set, None);
        }
    }

    #[test]
    fn quasi_lines_classify_with_layer_length() {
        let g = make_nqlg(&[1, 2, 3, 1], EdgePolicy::FullBipartite).unwrap();
        let r = classify(&g);
        assert_eq!(r.family, Some(Family::Nqlg));
        assert!(!r.families.contains(&Family::Nlg));
        assert_eq!(r.length, Some(4));
        assert_eq!(r.origin_set, Some(BTreeSet::from([0])));
    }

    #[test]
    fn broken_numbering_is_rejected_with_reasons() {
        let labels = vec![
            NodeLabel::plain(0),
            NodeLabel::plain(2),
            NodeLabel::plain(2),
        ];
        let g = super::super::LabelledGraph::new(labels, vec![(0, 1), (1, 2)])
            .unwrap();
        let r = classify(&g);
        assert!(!r.member);
        assert_eq!(r.family, None);
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn snowball_families() {
        for k in 1..=5 {
            let r = classify(&make_harmonious_sfnlg(k).unwrap());
            assert_eq!(r.family, Some(Family::Sfnlg));
            assert_eq!(r.length, Some((1 << k) - 1));
        }
        // Any facing/ball word on a numbered cycle is an SFNCG.
        let labels: Vec<NodeLabel> = (0..6)
            .map(|i| NodeLabel::snowball((i % 3) as u8, 1, (i % 2) as u8))
            .collect();
        let mut edges: Vec<(usize, usize)> = (1..6).map(|i| (i - 1, i)).collect();
        edges.push((5, 0));
        let g = super::super::LabelledGraph::new(labels, edges).unwrap();
        assert_eq!(classify(&g).family, Some(Family::Sfncg));
    }

    #[test]
    fn dist_from_set_multi_source() {
        let g = make_nlg(5).unwrap();
        let d = dist_from_set(&g, &BTreeSet::from([0, 4])).unwrap();
        assert_eq!(d, vec![0, 1, 2, 1, 0]);
        assert!(dist_from_set(&g, &BTreeSet::new()).is_err());
        assert!(dist_from_set(&g, &BTreeSet::from([9])).is_err());
    }
}
