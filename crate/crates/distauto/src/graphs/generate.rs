//! Generators for the graph families.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GraphError, LabelledGraph, NodeLabel};

/// How cross edges between consecutive layers of a quasi-line graph are
/// chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgePolicy {
    /// Every node of layer `d` is adjacent to every node of layer `d + 1`.
    FullBipartite,
    /// Each node gets one mandatory predecessor and successor; every other
    /// consecutive-layer pair is adjacent with probability one half.
    Random { seed: u64 },
}

/// The numbered line graph of length `n`: a path `v_0 .. v_{n-1}` with
/// `v_i` labelled `i mod 3`.
pub fn make_nlg(n: usize) -> Result<LabelledGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidArgument(
            "line length must be positive".into(),
        ));
    }
    let labels = (0..n).map(|i| NodeLabel::plain((i % 3) as u8)).collect();
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    LabelledGraph::new(labels, edges)
}

/// The numbered cycle graph of length `n`: a cycle `v_0 .. v_{n-1}` with
/// `v_i` labelled `i mod 3`. Requires `n >= 3` and `n` divisible by three so
/// that the numbering wraps around consistently.
pub fn make_ncg(n: usize) -> Result<LabelledGraph, GraphError> {
    if n < 3 || n % 3 != 0 {
        return Err(GraphError::InvalidArgument(format!(
            "cycle length must be a positive multiple of three, got {n}"
        )));
    }
    let labels = (0..n).map(|i| NodeLabel::plain((i % 3) as u8)).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    LabelledGraph::new(labels, edges)
}

/// A numbered quasi-line graph with `replica_counts[d]` nodes in layer `d`
/// (all labelled `d mod 3`) and edges only between consecutive layers.
///
/// Every node keeps at least one predecessor and at least one successor so
/// that the distance from the origin layer equals the layer index. Under
/// [`EdgePolicy::Random`] the remaining cross edges are sampled with
/// probability one half (deterministically from the seed).
pub fn make_nqlg(
    replica_counts: &[usize],
    policy: EdgePolicy,
) -> Result<LabelledGraph, GraphError> {
    if replica_counts.is_empty() {
        return Err(GraphError::InvalidArgument(
            "at least one layer is required".into(),
        ));
    }
    if replica_counts.iter().any(|&c| c == 0) {
        return Err(GraphError::InvalidArgument(
            "every layer needs at least one node".into(),
        ));
    }
    if replica_counts.len() == 1 && replica_counts[0] > 1 {
        return Err(GraphError::InvalidArgument(
            "a single layer with replicas is disconnected".into(),
        ));
    }
    let layers: Vec<Vec<usize>> = {
        let mut next = 0usize;
        replica_counts
            .iter()
            .map(|&c| {
                let ids = (next..next + c).collect();
                next += c;
                ids
            })
            .collect()
    };
    let n: usize = replica_counts.iter().sum();
    let labels = {
        let mut labels = vec![NodeLabel::plain(0); n];
        for (d, ids) in layers.iter().enumerate() {
            for &v in ids {
                labels[v] = NodeLabel::plain((d % 3) as u8);
            }
        }
        labels
    };

    let mut edges = Vec::new();
    match policy {
        EdgePolicy::FullBipartite => {
            for pair in layers.windows(2) {
                for &u in &pair[0] {
                    for &v in &pair[1] {
                        edges.push((u, v));
                    }
                }
            }
        }
        EdgePolicy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Connectivity is not implied by the per-node predecessor and
            // successor edges alone, so resample until the graph hangs
            // together. Full bipartite layers are a guaranteed fallback, so
            // the loop terminates fast in practice.
            for _attempt in 0..1000 {
                edges.clear();
                let mut chosen =
                    std::collections::HashSet::<(usize, usize)>::new();
                let add = |set: &mut std::collections::HashSet<_>,
                               edges: &mut Vec<(usize, usize)>,
                               u: usize,
                               v: usize| {
                    if set.insert((u, v)) {
                        edges.push((u, v));
                    }
                };
                for pair in layers.windows(2) {
                    let (lower, upper) = (&pair[0], &pair[1]);
                    for &v in upper {
                        let u = lower[rng.gen_range(0..lower.len())];
                        add(&mut chosen, &mut edges, u, v);
                    }
                    for &u in lower {
                        let v = upper[rng.gen_range(0..upper.len())];
                        add(&mut chosen, &mut edges, u, v);
                    }
                    for &u in lower {
                        for &v in upper {
                            if rng.gen_bool(0.5) {
                                add(&mut chosen, &mut edges, u, v);
                            }
                        }
                    }
                }
                if let Ok(g) = LabelledGraph::new(labels.clone(), edges.clone())
                {
                    return Ok(g);
                }
            }
            return Err(GraphError::InvalidArgument(
                "failed to sample a connected quasi-line graph".into(),
            ));
        }
    }
    LabelledGraph::new(labels, edges)
}

/// The harmonious snowball-fight line of order `k`: a path of length
/// `2^k - 1` whose facing/ball word is built by the mutual recursion
/// `l_1 = (-1,1)`, `r_1 = (+1,1)`,
/// `l_{n+1} = r_n (+1,0) l_n`, `r_{n+1} = r_n (-1,0) l_n`,
/// with numbering `i mod 3` along the path.
pub fn make_harmonious_sfnlg(k: usize) -> Result<LabelledGraph, GraphError> {
    if k == 0 || k > 24 {
        return Err(GraphError::InvalidArgument(format!(
            "order must be between 1 and 24, got {k}"
        )));
    }
    let mut l: Vec<(i8, u8)> = vec![(-1, 1)];
    let mut r: Vec<(i8, u8)> = vec![(1, 1)];
    for _ in 1..k {
        let mut next_l = r.clone();
        next_l.push((1, 0));
        next_l.extend_from_slice(&l);
        let mut next_r = r.clone();
        next_r.push((-1, 0));
        next_r.extend_from_slice(&l);
        l = next_l;
        r = next_r;
    }
    let labels = l
        .iter()
        .enumerate()
        .map(|(i, &(facing, ball))| {
            NodeLabel::snowball((i % 3) as u8, facing, ball)
        })
        .collect();
    let edges = (1..l.len()).map(|i| (i - 1, i)).collect();
    LabelledGraph::new(labels, edges)
}
