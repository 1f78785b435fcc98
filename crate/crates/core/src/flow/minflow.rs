use std::collections::VecDeque;

use super::{ArcId, Flow, FlowError, FlowNetwork, Node};

#[derive(Debug, Clone)]
pub struct MinFlowRun {
    pub flow: Flow,
    /// Successful decrementing-path pushes.
    pub decrements: usize,
    /// Residual searches, including the final unsuccessful one.
    pub searches: usize,
}

/// Residual BFS from `from`; returns the predecessor of every reached node.
/// Out-arcs (forward residual) are scanned before in-arcs (backward).
fn residual_bfs(net: &FlowNetwork, f: &Flow, from: Node, stop: Option<Node>) -> Vec<Option<(ArcId, bool)>> {
    let mut pred: Vec<Option<(ArcId, bool)>> = vec![None; net.nodes()];
    let mut seen = vec![false; net.nodes()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if Some(x) == stop {
            break;
        }
        for &id in net.out_arcs(x) {
            let a = net.arc(id);
            if f.get(id) < a.upper && !seen[a.to] {
                seen[a.to] = true;
                pred[a.to] = Some((id, true));
                queue.push_back(a.to);
            }
        }
        for &id in net.in_arcs(x) {
            let a = net.arc(id);
            if f.get(id) > a.lower && !seen[a.from] {
                seen[a.from] = true;
                pred[a.from] = Some((id, false));
                queue.push_back(a.from);
            }
        }
    }
    pred
}

/// Nodes reachable from `t` in the residual graph of `f`.
pub fn reachable_from_sink(net: &FlowNetwork, f: &Flow) -> Vec<bool> {
    let t = net.sink();
    let pred = residual_bfs(net, f, t, None);
    (0..net.nodes()).map(|v| v == t || pred[v].is_some()).collect()
}

/// Reduces an s-t flow to minimum value by pushing along residual `t -> s`
/// paths until none is left.
pub fn min_flow(net: &FlowNetwork, f0: &Flow) -> Result<MinFlowRun, FlowError> {
    if net.ts_arc().is_some() {
        return Err(FlowError::HasReturnArc);
    }
    f0.check_feasible(net)?;
    let (s, t) = (net.source(), net.sink());
    let mut f = f0.clone();
    let mut decrements = 0;
    let mut searches = 0;
    loop {
        searches += 1;
        let pred = residual_bfs(net, &f, t, Some(s));
        if pred[s].is_none() {
            break;
        }
        let mut steps = Vec::new();
        let mut v = s;
        while v != t {
            let (id, forward) = pred[v].expect("bfs tree reaches back to t");
            let a = net.arc(id);
            let cap = if forward { a.upper - f.get(id) } else { f.get(id) - a.lower };
            steps.push((id, forward, cap));
            v = if forward { a.from } else { a.to };
        }
        let bottleneck = steps.iter().map(|&(_, _, c)| c).min().unwrap_or(0);
        if bottleneck <= 0 {
            return Err(FlowError::Invariant("decrementing path without capacity".into()));
        }
        for (id, forward, _) in steps {
            f.add(id, if forward { bottleneck } else { -bottleneck })?;
        }
        decrements += 1;
    }
    if decrements as i64 > f0.value(net) - f.value(net) {
        return Err(FlowError::Invariant("more decrements than the value gap".into()));
    }
    Ok(MinFlowRun { flow: f, decrements, searches })
}
