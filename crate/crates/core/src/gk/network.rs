use crate::dag::{Dag, Vertex};
use crate::flow::{ArcId, Flow, FlowNetwork, NetworkBuilder, NetworkPath, Node, INFINITE};

use super::GkError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NetworkKind {
    /// Return arc of cost `k` and unbounded capacity.
    Alpha,
    /// Return arc of cost 0 and capacity `k`.
    Beta,
}

/// Arc ids of the split gadget of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget {
    /// `(s, v_in)`
    pub entry: ArcId,
    /// `(v_in, v_out)` with capacity 1 and cost -1.
    pub primary: ArcId,
    /// `(v_in, v_out)` with default bounds.
    pub secondary: ArcId,
    /// `(v_out, t)`
    pub exit: ArcId,
}

pub fn v_in(v: Vertex) -> Node {
    2 * v
}

pub fn v_out(v: Vertex) -> Node {
    2 * v + 1
}

#[derive(Debug, Clone)]
pub struct GkNetwork {
    pub net: FlowNetwork,
    pub kind: NetworkKind,
    pub k: usize,
    pub n: usize,
    pub gadgets: Vec<Gadget>,
    /// Arc of each DAG edge, in [`Dag::edges`] order.
    pub edge_arcs: Vec<ArcId>,
    pub ts: ArcId,
}

/// Arc order: per vertex `entry, primary, secondary, exit`, then one arc per
/// DAG edge, then the return arc.
pub fn build_network(dag: &Dag, k: usize, kind: NetworkKind) -> Result<GkNetwork, GkError> {
    if k == 0 {
        return Err(GkError::ZeroK);
    }
    let n = dag.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut b = NetworkBuilder::new(2 * n + 2, s, t);
    let gadgets = (0..n)
        .map(|v| Gadget {
            entry: b.arc(s, v_in(v)),
            primary: b.arc_with(v_in(v), v_out(v), 0, 1, -1),
            secondary: b.arc(v_in(v), v_out(v)),
            exit: b.arc(v_out(v), t),
        })
        .collect();
    let edge_arcs = dag.edges().iter().map(|&(u, v)| b.arc(v_out(u), v_in(v))).collect();
    let kk = i64::try_from(k).map_err(|_| GkError::ZeroK)?.min(INFINITE);
    let ts = match kind {
        NetworkKind::Alpha => b.return_arc(INFINITE, kk),
        NetworkKind::Beta => b.return_arc(kk, 0),
    };
    let net = b.build()?;
    Ok(GkNetwork { net, kind, k, n, gadgets, edge_arcs, ts })
}

impl GkNetwork {
    pub fn source(&self) -> Node {
        2 * self.n
    }

    pub fn sink(&self) -> Node {
        2 * self.n + 1
    }

    fn edge_arc(&self, dag: &Dag, u: Vertex, v: Vertex) -> Option<ArcId> {
        dag.edges().binary_search(&(u, v)).ok().map(|i| self.edge_arcs[i])
    }

    /// One unit per DAG path; each vertex uses its primary arc on its first
    /// visit and the secondary arc afterwards.
    pub fn flow_from_paths(&self, dag: &Dag, paths: &[Vec<Vertex>]) -> Result<Flow, GkError> {
        let mut values = vec![0i64; self.net.arcs().len()];
        for p in paths {
            let (Some(&first), Some(&last)) = (p.first(), p.last()) else { continue };
            values[self.gadgets[first].entry] += 1;
            values[self.gadgets[last].exit] += 1;
            for (i, &v) in p.iter().enumerate() {
                let g = self.gadgets[v];
                if values[g.primary] == 0 {
                    values[g.primary] = 1;
                } else {
                    values[g.secondary] += 1;
                }
                if let Some(&w) = p.get(i + 1) {
                    let a = self.edge_arc(dag, v, w).ok_or(GkError::Invariant(format!("({v}, {w}) is not an edge")))?;
                    values[a] += 1;
                }
            }
            values[self.ts] += 1;
        }
        let f = Flow::from_values(values);
        f.check_feasible(&self.net)?;
        Ok(f)
    }

    /// The DAG vertices on a network s-t path.
    pub fn dag_path(&self, path: &NetworkPath) -> Vec<Vertex> {
        path.nodes.iter().filter(|&&x| x < 2 * self.n && x % 2 == 0).map(|&x| x / 2).collect()
    }

    /// In an optimal circulation the secondary arc carries flow only once the
    /// primary one is saturated.
    pub fn check_gadgets(&self, f: &Flow) -> Result<(), GkError> {
        for (v, g) in self.gadgets.iter().enumerate() {
            if f.get(g.secondary) > 0 && f.get(g.primary) != 1 {
                return Err(GkError::Invariant(format!("gadget of vertex {v} uses its secondary arc first")));
            }
        }
        Ok(())
    }

    /// Vertices whose primary arc is saturated.
    pub fn covered(&self, f: &Flow) -> Vec<bool> {
        self.gadgets.iter().map(|g| f.get(g.primary) == 1).collect()
    }
}
