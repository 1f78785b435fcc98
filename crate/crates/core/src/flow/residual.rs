use std::collections::VecDeque;

use super::{ArcId, Flow, FlowError, FlowNetwork, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualArc {
    pub from: Node,
    pub to: Node,
    pub capacity: i64,
    pub cost: i64,
    pub arc: ArcId,
    pub direction: Direction,
}

/// Residual arcs grouped by tail node; within a node, network arc order with
/// the forward copy first.
#[derive(Debug, Clone)]
pub struct ResidualGraph {
    nodes: usize,
    arcs: Vec<ResidualArc>,
    start: Vec<usize>,
}

impl ResidualGraph {
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[ResidualArc] {
        &self.arcs
    }

    pub fn out(&self, v: Node) -> &[ResidualArc] {
        &self.arcs[self.start[v]..self.start[v + 1]]
    }
}

/// A closed walk of residual arcs, listed head to tail.
pub type Cycle = Vec<ResidualArc>;

pub fn residual(net: &FlowNetwork, f: &Flow) -> Result<ResidualGraph, FlowError> {
    f.check_feasible(net)?;
    let mut per_node: Vec<Vec<ResidualArc>> = vec![Vec::new(); net.nodes()];
    for (id, a) in net.arcs().iter().enumerate() {
        let x = f.get(id);
        if x < a.upper {
            per_node[a.from].push(ResidualArc {
                from: a.from,
                to: a.to,
                capacity: a.upper - x,
                cost: a.cost,
                arc: id,
                direction: Direction::Forward,
            });
        }
        if x > a.lower {
            per_node[a.to].push(ResidualArc {
                from: a.to,
                to: a.from,
                capacity: x - a.lower,
                cost: -a.cost,
                arc: id,
                direction: Direction::Backward,
            });
        }
    }
    let mut start = Vec::with_capacity(net.nodes() + 1);
    let mut arcs = Vec::new();
    for list in per_node {
        start.push(arcs.len());
        arcs.extend(list);
    }
    start.push(arcs.len());
    Ok(ResidualGraph { nodes: net.nodes(), arcs, start })
}

/// Queue-based Bellman-Ford from a virtual source joined to every node.
///
/// Every `nodes` relaxations the predecessor graph is searched for a cycle;
/// any such cycle has negative cost. Returns the first one found, or `None`
/// once the labels settle.
pub fn find_negative_cycle(res: &ResidualGraph) -> Option<Cycle> {
    let n = res.nodes;
    let mut d = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<Node> = (0..n).collect();
    let mut relaxations = 0usize;

    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        for (i, ra) in res.out(u).iter().enumerate() {
            let cand = d[u] + ra.cost;
            if cand < d[ra.to] {
                d[ra.to] = cand;
                pred[ra.to] = Some(res.start[u] + i);
                if !queued[ra.to] {
                    queued[ra.to] = true;
                    queue.push_back(ra.to);
                }
                relaxations += 1;
                if relaxations.is_multiple_of(n.max(1)) {
                    if let Some(c) = predecessor_cycle(res, &pred) {
                        return Some(c);
                    }
                }
            }
        }
    }
    debug_assert!(predecessor_cycle(res, &pred).is_none());
    None
}

fn predecessor_cycle(res: &ResidualGraph, pred: &[Option<usize>]) -> Option<Cycle> {
    let n = res.nodes;
    // 0 = unvisited, 1 = on the current walk, 2 = finished.
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = root;
        loop {
            if state[v] == 2 {
                break;
            }
            if state[v] == 1 {
                let mut cycle = Vec::new();
                let mut x = v;
                loop {
                    let a = res.arcs[pred[x].expect("walk nodes have predecessors")];
                    cycle.push(a);
                    x = a.from;
                    if x == v {
                        break;
                    }
                }
                cycle.reverse();
                if cycle.iter().map(|a| a.cost).sum::<i64>() < 0 {
                    return Some(cycle);
                }
                break;
            }
            state[v] = 1;
            walk.push(v);
            match pred[v] {
                Some(p) => v = res.arcs[p].from,
                None => break,
            }
        }
        for w in walk {
            state[w] = 2;
        }
    }
    None
}

/// Shortest residual path costs from one node; `None` marks unreachable nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceLabels {
    pub d: Vec<Option<i64>>,
}

impl DistanceLabels {
    pub fn get(&self, v: Node) -> Option<i64> {
        self.d[v]
    }

    /// `d(head) <= d(tail) + cost` on every residual arc with a labelled tail.
    pub fn is_potential(&self, res: &ResidualGraph) -> bool {
        res.arcs.iter().all(|a| match (self.d[a.from], self.d[a.to]) {
            (Some(du), Some(dv)) => dv <= du + a.cost,
            (Some(_), None) => false,
            _ => true,
        })
    }
}

pub fn shortest_distances(res: &ResidualGraph, source: Node) -> Result<DistanceLabels, FlowError> {
    let n = res.nodes;
    if source >= n {
        return Err(FlowError::NodeRange { node: source, nodes: n });
    }
    let mut d: Vec<Option<i64>> = vec![None; n];
    let mut pops = vec![0usize; n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::from([source]);
    d[source] = Some(0);
    queued[source] = true;
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        pops[u] += 1;
        if pops[u] > n {
            return Err(FlowError::NegativeCycle);
        }
        let du = d[u].expect("queued nodes are labelled");
        for ra in res.out(u) {
            let cand = du + ra.cost;
            if d[ra.to].is_none_or(|dv| cand < dv) {
                d[ra.to] = Some(cand);
                if !queued[ra.to] {
                    queued[ra.to] = true;
                    queue.push_back(ra.to);
                }
            }
        }
    }
    Ok(DistanceLabels { d })
}
