use super::{ArcId, Flow, FlowError, FlowNetwork, Node};

/// One unit of an s-t flow; `nodes` has one more entry than `arcs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkPath {
    pub arcs: Vec<ArcId>,
    pub nodes: Vec<Node>,
}

/// Peels `f` into exactly `value(f)` unit s-t paths, return arc excluded.
///
/// At each node the walk leaves by the arc with remaining flow whose head is
/// earliest in topological order (ties by arc id).
pub fn decompose(net: &FlowNetwork, f: &Flow) -> Result<Vec<NetworkPath>, FlowError> {
    f.check_feasible(net)?;
    let (s, t) = (net.source(), net.sink());
    let ts = net.ts_arc();
    let mut remaining: Vec<i64> = f.values().to_vec();
    if let Some(ts) = ts {
        remaining[ts] = 0;
    }
    let order: Vec<Vec<ArcId>> = (0..net.nodes())
        .map(|v| {
            let mut out: Vec<ArcId> = net.out_arcs(v).iter().copied().filter(|&a| Some(a) != ts).collect();
            out.sort_by_key(|&a| (net.topo_position(net.arc(a).to), a));
            out
        })
        .collect();
    let mut cursor = vec![0usize; net.nodes()];

    let units = f.value(net);
    let mut paths = Vec::with_capacity(units.max(0) as usize);
    for _ in 0..units {
        let mut path = NetworkPath { arcs: Vec::new(), nodes: vec![s] };
        let mut v = s;
        while v != t {
            let list = &order[v];
            while cursor[v] < list.len() && remaining[list[cursor[v]]] == 0 {
                cursor[v] += 1;
            }
            let Some(&a) = list.get(cursor[v]) else {
                return Err(FlowError::Conservation(v));
            };
            remaining[a] -= 1;
            path.arcs.push(a);
            v = net.arc(a).to;
            path.nodes.push(v);
        }
        paths.push(path);
    }
    if let Some(a) = remaining.iter().position(|&r| r != 0) {
        return Err(FlowError::Conservation(net.arc(a).from));
    }
    Ok(paths)
}

/// Sums unit flow over `paths`, putting `paths.len()` on the return arc if any.
pub fn reconstruct(net: &FlowNetwork, paths: &[NetworkPath]) -> Flow {
    let mut f = Flow::zero(net);
    for p in paths {
        for &a in &p.arcs {
            f.values[a] += 1;
        }
    }
    if let Some(ts) = net.ts_arc() {
        f.values[ts] = paths.len() as i64;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::tests::diamond;

    #[test]
    fn zero_flow_has_no_paths() {
        let net = diamond(1);
        assert!(decompose(&net, &Flow::zero(&net)).unwrap().is_empty());
    }

    #[test]
    fn peels_and_reconstructs() {
        let net = diamond(1);
        let f = Flow::from_values(vec![1, 1, 2, 2, 3]);
        let paths = decompose(&net, &f).unwrap();
        assert_eq!(paths.len(), 3);
        // Node 1 precedes node 2 topologically, so the first unit goes 0-1-3.
        assert_eq!(paths[0].nodes, vec![0, 1, 3]);
        assert_eq!(paths[1].nodes, vec![0, 2, 3]);
        assert_eq!(reconstruct(&net, &paths), f);
    }
}
