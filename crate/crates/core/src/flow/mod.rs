//! Integer flow networks with lower bounds.
//!
//! Every network here is acyclic once its optional return arc `(t, s)` is
//! removed. A network with a return arc carries circulations (conservation at
//! every node); one without carries s-t flows.

mod circulation;
mod decompose;
mod minflow;
mod residual;

use thiserror::Error;

pub use circulation::{cancel_cycle, min_cost_circulation, CancelStep, CirculationRun};
pub use decompose::{decompose, reconstruct, NetworkPath};
pub use minflow::{min_flow, reachable_from_sink, MinFlowRun};
pub use residual::{
    find_negative_cycle, residual, shortest_distances, Cycle, Direction, DistanceLabels, ResidualArc, ResidualGraph,
};

pub type Node = usize;
pub type ArcId = usize;

/// Capacity sentinel for "no upper bound". Builders reject networks large
/// enough for a legal flow to approach it.
pub const INFINITE: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("node {node} is out of range for a network with {nodes} nodes")]
    NodeRange { node: Node, nodes: usize },
    #[error("arc {0} has invalid bounds")]
    BadBounds(ArcId),
    #[error("the network without its return arc has a cycle")]
    Cyclic,
    #[error("network too large for the capacity sentinel")]
    TooLarge,
    #[error("flow violates the bounds of arc {0}")]
    Infeasible(ArcId),
    #[error("flow is not conserved at node {0}")]
    Conservation(Node),
    #[error("not a negative residual cycle: {0}")]
    InvalidCycle(&'static str),
    #[error("a negative cycle is reachable from the source")]
    NegativeCycle,
    #[error("negative cycle of unbounded capacity")]
    Unbounded,
    #[error("minimum flow needs a network without a return arc")]
    HasReturnArc,
    #[error("integer overflow in flow arithmetic")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: Node,
    pub to: Node,
    pub lower: i64,
    pub upper: i64,
    pub cost: i64,
}

#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    nodes: usize,
    source: Node,
    sink: Node,
    arcs: Vec<Arc>,
    ts_arc: Option<ArcId>,
}

impl NetworkBuilder {
    pub fn new(nodes: usize, source: Node, sink: Node) -> Self {
        NetworkBuilder { nodes, source, sink, arcs: Vec::new(), ts_arc: None }
    }

    /// Arc with the default bounds `[0, INFINITE]` and cost 0.
    pub fn arc(&mut self, from: Node, to: Node) -> ArcId {
        self.arc_with(from, to, 0, INFINITE, 0)
    }

    pub fn arc_with(&mut self, from: Node, to: Node, lower: i64, upper: i64, cost: i64) -> ArcId {
        self.arcs.push(Arc { from, to, lower, upper, cost });
        self.arcs.len() - 1
    }

    /// The designated `(t, s)` arc. At most one per network.
    pub fn return_arc(&mut self, upper: i64, cost: i64) -> ArcId {
        let id = self.arc_with(self.sink, self.source, 0, upper, cost);
        self.ts_arc = Some(id);
        id
    }

    pub fn build(self) -> Result<FlowNetwork, FlowError> {
        let nodes = self.nodes;
        for v in [self.source, self.sink] {
            if v >= nodes {
                return Err(FlowError::NodeRange { node: v, nodes });
            }
        }
        let m = self.arcs.len() as i64;
        if m.checked_mul(m + 2).is_none_or(|x| x >= INFINITE) {
            return Err(FlowError::TooLarge);
        }
        let mut out_arcs = vec![Vec::new(); nodes];
        let mut in_arcs = vec![Vec::new(); nodes];
        for (id, a) in self.arcs.iter().enumerate() {
            for v in [a.from, a.to] {
                if v >= nodes {
                    return Err(FlowError::NodeRange { node: v, nodes });
                }
            }
            if a.lower < 0 || a.lower > a.upper || a.upper > INFINITE || a.cost.abs() >= INFINITE {
                return Err(FlowError::BadBounds(id));
            }
            out_arcs[a.from].push(id);
            in_arcs[a.to].push(id);
        }

        let mut indeg = vec![0usize; nodes];
        for (id, a) in self.arcs.iter().enumerate() {
            if Some(id) != self.ts_arc {
                indeg[a.to] += 1;
            }
        }
        let mut stack: Vec<Node> = (0..nodes).rev().filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(nodes);
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &id in out_arcs[x].iter().rev() {
                if Some(id) == self.ts_arc {
                    continue;
                }
                let y = self.arcs[id].to;
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() < nodes {
            return Err(FlowError::Cyclic);
        }
        let mut position = vec![0; nodes];
        for (i, &v) in topo.iter().enumerate() {
            position[v] = i;
        }

        Ok(FlowNetwork {
            nodes,
            source: self.source,
            sink: self.sink,
            arcs: self.arcs,
            ts_arc: self.ts_arc,
            out_arcs,
            in_arcs,
            position,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    nodes: usize,
    source: Node,
    sink: Node,
    arcs: Vec<Arc>,
    ts_arc: Option<ArcId>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
    position: Vec<usize>,
}

impl FlowNetwork {
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> Node {
        self.source
    }

    pub fn sink(&self) -> Node {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    pub fn ts_arc(&self) -> Option<ArcId> {
        self.ts_arc
    }

    pub fn out_arcs(&self, v: Node) -> &[ArcId] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: Node) -> &[ArcId] {
        &self.in_arcs[v]
    }

    /// Position of `v` in a topological order of the network minus its return arc.
    pub fn topo_position(&self, v: Node) -> usize {
        self.position[v]
    }

    /// Lower bounds may change between solves; the caller keeps its flow feasible.
    pub fn set_lower(&mut self, id: ArcId, lower: i64) -> Result<(), FlowError> {
        let arc = &mut self.arcs[id];
        if lower < 0 || lower > arc.upper {
            return Err(FlowError::BadBounds(id));
        }
        arc.lower = lower;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    values: Vec<i64>,
}

impl Flow {
    pub fn zero(net: &FlowNetwork) -> Self {
        Flow { values: vec![0; net.arcs.len()] }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        Flow { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, id: ArcId) -> i64 {
        self.values[id]
    }

    pub(crate) fn add(&mut self, id: ArcId, delta: i64) -> Result<(), FlowError> {
        self.values[id] = self.values[id].checked_add(delta).ok_or(FlowError::Overflow)?;
        Ok(())
    }

    pub fn cost(&self, net: &FlowNetwork) -> Result<i64, FlowError> {
        self.values.iter().zip(&net.arcs).try_fold(0i64, |acc, (&f, a)| {
            f.checked_mul(a.cost).and_then(|c| acc.checked_add(c)).ok_or(FlowError::Overflow)
        })
    }

    /// `f(t, s)` for circulations, otherwise the net outflow of `s`.
    pub fn value(&self, net: &FlowNetwork) -> i64 {
        match net.ts_arc {
            Some(ts) => self.values[ts],
            None => {
                let out: i64 = net.out_arcs[net.source].iter().map(|&a| self.values[a]).sum();
                let inn: i64 = net.in_arcs[net.source].iter().map(|&a| self.values[a]).sum();
                out - inn
            }
        }
    }

    /// Bounds on every arc, and conservation at every node (except `s` and
    /// `t` when the network has no return arc).
    pub fn check_feasible(&self, net: &FlowNetwork) -> Result<(), FlowError> {
        if self.values.len() != net.arcs.len() {
            return Err(FlowError::Invariant("flow length differs from arc count".into()));
        }
        for (id, (&f, a)) in self.values.iter().zip(&net.arcs).enumerate() {
            if f < a.lower || f > a.upper {
                return Err(FlowError::Infeasible(id));
            }
        }
        let mut excess = vec![0i64; net.nodes];
        for (&f, a) in self.values.iter().zip(&net.arcs) {
            excess[a.from] -= f;
            excess[a.to] += f;
        }
        for (v, &e) in excess.iter().enumerate() {
            let terminal = v == net.source || v == net.sink;
            if e != 0 && (net.ts_arc.is_some() || !terminal) {
                return Err(FlowError::Conservation(v));
            }
        }
        if net.ts_arc.is_none() && excess[net.source] > 0 {
            return Err(FlowError::Conservation(net.source));
        }
        Ok(())
    }
}
