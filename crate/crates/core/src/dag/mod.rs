//! Directed acyclic graphs with dense vertex ids.

mod family;
mod objects;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use thiserror::Error;

pub use family::Family;
pub use objects::{certify_antichain, certify_chain, certify_path, Antichain, CertError, Chain, GraphPath, Member};

pub type Vertex = usize;

/// Largest graph for which certifiers build the bitset transitive closure.
pub const CLOSURE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    Index { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("the graph contains a directed cycle through vertex {0}")]
    Cycle(Vertex),
}

/// An immutable DAG on vertices `0..n`.
///
/// Duplicate input edges are merged. The topological order is the
/// lexicographically smallest one (Kahn's algorithm with a min-heap), so it
/// is a function of the edge set alone.
#[derive(Debug, Clone)]
pub struct Dag {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    succ: Vec<Vec<Vertex>>,
    pred: Vec<Vec<Vertex>>,
    topo: Vec<Vertex>,
    position: Vec<usize>,
    closure: OnceLock<Closure>,
}

impl Dag {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, DagError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(DagError::Index { vertex: w, n });
                }
            }
            if u == v {
                return Err(DagError::SelfLoop(u));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        list.dedup();

        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in &list {
            succ[u].push(v);
            pred[v].push(u);
        }
        for p in &mut pred {
            p.sort_unstable();
        }

        let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<Vertex>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            topo.push(u);
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(DagError::Cycle(stuck));
        }
        let mut position = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            position[v] = i;
        }

        Ok(Dag { n, edges: list, succ, pred, topo, position, closure: OnceLock::new() })
    }

    pub fn empty(n: usize) -> Self {
        Dag::new(n, std::iter::empty()).expect("edgeless graphs are acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Deduplicated edges, sorted lexicographically.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.pred[v]
    }

    pub fn topo_order(&self) -> &[Vertex] {
        &self.topo
    }

    pub fn topo_position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), DagError> {
        if v < self.n {
            Ok(())
        } else {
            Err(DagError::Index { vertex: v, n: self.n })
        }
    }

    /// `true` iff a directed path leads from `u` to `v`; every vertex reaches itself.
    pub fn reachable(&self, u: Vertex, v: Vertex) -> Result<bool, DagError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(match self.closure.get() {
            Some(c) => c.reaches(u, v),
            None => self.reaches_dfs(u, v),
        })
    }

    /// Reachability for in-range vertices, using the closure cache on small graphs.
    pub(crate) fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        if self.n <= CLOSURE_LIMIT {
            self.closure().reaches(u, v)
        } else {
            self.reaches_dfs(u, v)
        }
    }

    fn reaches_dfs(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return true;
        }
        let target = self.position[v];
        if self.position[u] > target {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.succ[x] {
                if y == v {
                    return true;
                }
                if !seen[y] && self.position[y] < target {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Bitset transitive closure, built on first use.
    pub fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| Closure::build(self))
    }

    /// Every vertex comparable with `v` (reaching it or reached from it), including `v`.
    pub fn comparable(&self, v: Vertex) -> Vec<Vertex> {
        let mut mark = vec![false; self.n];
        mark[v] = true;
        for adjacency in [&self.succ, &self.pred] {
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &y in &adjacency[x] {
                    if !mark[y] {
                        mark[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (0..self.n).filter(|&u| mark[u]).collect()
    }

    /// Number of vertices on a longest path ending at each vertex.
    pub fn longest_path_levels(&self) -> Vec<usize> {
        let mut level = vec![1; self.n];
        for &v in &self.topo {
            for &w in &self.succ[v] {
                level[w] = level[w].max(level[v] + 1);
            }
        }
        level
    }

    /// Vertices on a longest path (the height of the DAG).
    pub fn height(&self) -> usize {
        self.longest_path_levels().into_iter().max().unwrap_or(0)
    }
}

/// Row-per-vertex reachability bitsets.
#[derive(Debug, Clone)]
pub struct Closure {
    words: usize,
    rows: Vec<u64>,
}

impl Closure {
    fn build(dag: &Dag) -> Self {
        let words = dag.n.div_ceil(64).max(1);
        let mut rows = vec![0u64; words * dag.n];
        for &u in dag.topo.iter().rev() {
            rows[u * words + u / 64] |= 1 << (u % 64);
            for &v in &dag.succ[u] {
                for w in 0..words {
                    let bit = rows[v * words + w];
                    rows[u * words + w] |= bit;
                }
            }
        }
        Closure { words, rows }
    }

    pub fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The nine-vertex example DAG, vertices v1..v9 as ids 0..8.
    pub(crate) fn sample_dag() -> Dag {
        let edges = [(1, 5), (1, 6), (2, 5), (2, 7), (3, 8), (5, 8), (4, 9), (5, 9)];
        Dag::new(9, edges.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
    }

    fn bfs_reach(n: usize, edges: &[(usize, usize)], u: usize, v: usize) -> bool {
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                return true;
            }
            for &(a, b) in edges {
                if a == x && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        false
    }

    #[test]
    fn two_vertex_path() {
        let dag = Dag::new(2, [(0, 1)]).unwrap();
        assert_eq!(dag.topo_order(), &[0, 1]);
    }

    #[test]
    fn sample_dag_builds() {
        let dag = sample_dag();
        assert_eq!(dag.n(), 9);
        assert_eq!(dag.edge_count(), 8);
        assert_eq!(dag.height(), 3);
    }

    #[test]
    fn two_cycle_is_rejected() {
        assert!(matches!(Dag::new(2, [(0, 1), (1, 0)]), Err(DagError::Cycle(_))));
    }

    #[test]
    fn bad_input() {
        assert_eq!(Dag::new(2, [(0, 2)]).unwrap_err(), DagError::Index { vertex: 2, n: 2 });
        assert_eq!(Dag::new(3, [(1, 1)]).unwrap_err(), DagError::SelfLoop(1));
    }

    #[test]
    fn duplicates_are_merged() {
        let dag = Dag::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(dag.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn reachability_on_sample_dag() {
        let dag = sample_dag();
        assert!(dag.reachable(0, 7).unwrap());
        assert!(!dag.reachable(2, 3).unwrap());
        for v in 0..9 {
            assert!(dag.reachable(v, v).unwrap());
        }
        assert!(dag.reachable(0, 9).is_err());

        let edges: Vec<_> = dag.edges().to_vec();
        for u in 0..9 {
            for v in 0..9 {
                let expected = bfs_reach(9, &edges, u, v);
                assert_eq!(dag.reaches_dfs(u, v), expected);
                assert_eq!(dag.closure().reaches(u, v), expected);
            }
        }
    }

    #[test]
    fn comparable_set() {
        let dag = sample_dag();
        // v5 sits between v1, v2 and v8, v9.
        assert_eq!(dag.comparable(4), vec![0, 1, 4, 7, 8]);
    }
}
