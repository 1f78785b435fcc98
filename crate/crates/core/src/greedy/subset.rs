use crate::dag::{certify_antichain, Antichain, Dag, Vertex};
use crate::flow::{reachable_from_sink, ArcId, Flow, FlowNetwork, NetworkBuilder};
use crate::gk::{v_in, v_out};

use super::{GreedyError, UncoveredSet};

/// Split network without a return arc and with a single arc per vertex,
/// whose lower bound is 1 exactly for the vertices of `U`. Minimum flow
/// value = maximum antichain size inside `U`.
#[derive(Debug, Clone)]
pub struct SubsetNetwork {
    pub net: FlowNetwork,
    pub n: usize,
    pub entry: Vec<ArcId>,
    pub split: Vec<ArcId>,
    pub exit: Vec<ArcId>,
    /// Arc of each DAG edge, in [`Dag::edges`] order.
    pub edge_arcs: Vec<ArcId>,
    subset: UncoveredSet,
}

pub fn build_subset_network(dag: &Dag, u: &UncoveredSet) -> SubsetNetwork {
    let n = dag.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut b = NetworkBuilder::new(2 * n + 2, s, t);
    let (mut entry, mut split, mut exit) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..n {
        entry.push(b.arc(s, v_in(v)));
        let id = b.arc(v_in(v), v_out(v));
        split.push(id);
        exit.push(b.arc(v_out(v), t));
    }
    let edge_arcs = dag.edges().iter().map(|&(a, c)| b.arc(v_out(a), v_in(c))).collect();
    let net = b.build().expect("split networks of DAGs are acyclic");
    let mut sn = SubsetNetwork { net, n, entry, split, exit, edge_arcs, subset: UncoveredSet::empty(n) };
    sn.set_subset(u);
    sn
}

impl SubsetNetwork {
    pub fn subset(&self) -> &UncoveredSet {
        &self.subset
    }

    /// Moves the lower bounds to a new `U`.
    pub fn set_subset(&mut self, u: &UncoveredSet) {
        for v in 0..self.n {
            self.net.set_lower(self.split[v], u.contains(v) as i64).expect("split arcs are unbounded");
        }
        self.subset = u.clone();
    }

    /// One unit along each DAG path.
    pub fn flow_from_paths(&self, dag: &Dag, paths: &[Vec<Vertex>]) -> Result<Flow, GreedyError> {
        let mut values = vec![0i64; self.net.arcs().len()];
        for p in paths {
            let (Some(&first), Some(&last)) = (p.first(), p.last()) else { continue };
            values[self.entry[first]] += 1;
            values[self.exit[last]] += 1;
            for (i, &v) in p.iter().enumerate() {
                values[self.split[v]] += 1;
                if let Some(&w) = p.get(i + 1) {
                    let idx = dag
                        .edges()
                        .binary_search(&(v, w))
                        .map_err(|_| GreedyError::Invariant(format!("({v}, {w}) is not an edge")))?;
                    values[self.edge_arcs[idx]] += 1;
                }
            }
        }
        let f = Flow::from_values(values);
        f.check_feasible(&self.net)?;
        Ok(f)
    }
}

/// The antichain `{v in U : v_out reachable from t, v_in not}` of a minimum
/// flow in the residual graph. Its size equals the flow value.
pub fn max_antichain_in_subset(dag: &Dag, sn: &SubsetNetwork, fmin: &Flow) -> Result<Antichain, GreedyError> {
    fmin.check_feasible(&sn.net)?;
    let vt = reachable_from_sink(&sn.net, fmin);
    if vt[sn.net.source()] {
        return Err(GreedyError::NotMinimum);
    }
    let members: Vec<Vertex> = (0..sn.n).filter(|&v| sn.subset.contains(v) && vt[v_out(v)] && !vt[v_in(v)]).collect();
    if members.len() as i64 != fmin.value(&sn.net) {
        return Err(GreedyError::Invariant(format!(
            "antichain of size {} from a flow of value {}",
            members.len(),
            fmin.value(&sn.net)
        )));
    }
    Ok(certify_antichain(dag, &members)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::tests::sample_dag;
    use crate::dag::Member;
    use crate::flow::min_flow;
    use crate::greedy::greedy_chain_partition;

    fn width_of(dag: &Dag, u: &UncoveredSet) -> (usize, Antichain) {
        let sn = build_subset_network(dag, u);
        let (paths, _) = greedy_chain_partition(dag);
        let raw: Vec<Vec<usize>> = paths.iter().map(|p| p.vertices().to_vec()).collect();
        let f0 = sn.flow_from_paths(dag, &raw).unwrap();
        let run = min_flow(&sn.net, &f0).unwrap();
        let a = max_antichain_in_subset(dag, &sn, &run.flow).unwrap();
        (run.flow.value(&sn.net) as usize, a)
    }

    #[test]
    fn sample_dag_width() {
        let dag = sample_dag();
        let (w, a) = width_of(&dag, &UncoveredSet::full(9));
        assert_eq!(w, 5);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn small_subsets() {
        let dag = sample_dag();
        assert_eq!(width_of(&dag, &UncoveredSet::empty(9)).0, 0);
        let (w, a) = width_of(&dag, &UncoveredSet::from_vertices(9, &[4]));
        assert_eq!(w, 1);
        assert_eq!(a.vertices(), &[4]);
    }

    #[test]
    fn non_minimum_flow_is_rejected() {
        let dag = sample_dag();
        let sn = build_subset_network(&dag, &UncoveredSet::from_vertices(9, &[4]));
        let f = sn.flow_from_paths(&dag, &[vec![0, 4, 7], vec![3, 8]]).unwrap();
        assert_eq!(max_antichain_in_subset(&dag, &sn, &f), Err(GreedyError::NotMinimum));
    }
}
