use crate::dag::{Dag, GraphPath, Vertex};

use super::UncoveredSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathChoice {
    pub path: GraphPath,
    /// Uncovered vertices on the path.
    pub gain: usize,
}

/// `score[v]` = most uncovered vertices on a path ending at `v`, with the
/// best predecessor (smallest id among ties) or `None` when the path starts
/// at `v`.
fn scores(dag: &Dag, u: &UncoveredSet) -> (Vec<usize>, Vec<Option<Vertex>>) {
    let n = dag.n();
    let mut score = vec![0usize; n];
    let mut pred = vec![None; n];
    for &v in dag.topo_order() {
        let mut best: Option<Vertex> = None;
        for &p in dag.predecessors(v) {
            if best.is_none_or(|b| score[p] > score[b]) {
                best = Some(p);
            }
        }
        let carried = best.map_or(0, |b| score[b]);
        if carried > 0 {
            pred[v] = best;
        }
        score[v] = carried + u.contains(v) as usize;
    }
    (score, pred)
}

/// A path through the most vertices of `u`. It ends at the smallest-id
/// uncovered vertex of maximum score and starts at an uncovered vertex.
/// With nothing uncovered the answer is the path `[0]` with gain 0.
pub fn max_coverage_path(dag: &Dag, u: &UncoveredSet) -> PathChoice {
    let n = dag.n();
    let (score, pred) = scores(dag, u);
    let end = (0..n).filter(|&v| u.contains(v)).fold(None, |best: Option<Vertex>, v| match best {
        Some(b) if score[b] >= score[v] => Some(b),
        _ => Some(v),
    });
    let Some(end) = end else {
        let trivial = if n == 0 { vec![] } else { vec![0] };
        return PathChoice { path: GraphPath::trusted(trivial), gain: 0 };
    };
    let mut rev = vec![end];
    let mut v = end;
    while let Some(p) = pred[v] {
        rev.push(p);
        v = p;
    }
    rev.reverse();
    PathChoice { gain: score[end], path: GraphPath::trusted(rev) }
}

/// Number of distinct maximum-gain paths that start and end in `u`,
/// saturating at `u64::MAX`.
pub fn count_optimal_paths(dag: &Dag, u: &UncoveredSet) -> u64 {
    let (score, _) = scores(dag, u);
    let mut count = vec![0u64; dag.n()];
    for &v in dag.topo_order() {
        let carried = dag.predecessors(v).iter().map(|&p| score[p]).max().unwrap_or(0);
        count[v] = if carried > 0 {
            dag.predecessors(v)
                .iter()
                .filter(|&&p| score[p] == carried)
                .fold(0u64, |acc, &p| acc.saturating_add(count[p]))
        } else {
            u.contains(v) as u64
        };
    }
    let best = (0..dag.n()).filter(|&v| u.contains(v)).map(|v| score[v]).max();
    match best {
        None | Some(0) => 0,
        Some(b) => {
            (0..dag.n()).filter(|&v| u.contains(v) && score[v] == b).fold(0u64, |acc, v| acc.saturating_add(count[v]))
        }
    }
}
