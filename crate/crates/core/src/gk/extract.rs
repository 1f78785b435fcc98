use crate::dag::{certify_antichain, Antichain, Dag, Family};
use crate::flow::{residual, shortest_distances, Flow, FlowNetwork};

use super::network::{v_in, v_out, GkNetwork, NetworkKind};
use super::GkError;

/// Antichains read off the residual distances of an optimal circulation.
///
/// With `d` the shortest distances from `s`, a vertex whose split arc drops
/// in distance (`d(v_in) > d(v_out)`) goes to antichain `d(v_in) - d(t)`.
/// Indices run over `1..=d(s) - d(t)`; empty ones are dropped.
pub fn extract_antichains(dag: &Dag, gk: &GkNetwork, f: &Flow) -> Result<Family<Antichain>, GkError> {
    if gk.kind == NetworkKind::Alpha && f.get(gk.ts) == 0 {
        return Err(GkError::Degenerate);
    }
    if gk.n == 0 {
        return Ok(Family::empty(0));
    }
    let res = residual(&gk.net, f)?;
    let dist = shortest_distances(&res, gk.source())?;
    let label = |x| dist.get(x).ok_or_else(|| GkError::Invariant(format!("node {x} unreachable from s")));
    let ds = label(gk.source())?;
    let dt = label(gk.sink())?;
    let levels = ds - dt;
    if gk.kind == NetworkKind::Alpha && levels != gk.k as i64 {
        return Err(GkError::Invariant(format!("d(s) - d(t) = {levels}, expected {}", gk.k)));
    }
    if levels < 0 {
        return Err(GkError::Invariant("d(t) exceeds d(s)".into()));
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); levels as usize];
    for v in 0..gk.n {
        let (di, dout) = (label(v_in(v))?, label(v_out(v))?);
        if di > dout {
            let idx = di - dt;
            if idx < 1 || idx > levels {
                return Err(GkError::Invariant(format!("vertex {v} has level {idx} outside 1..={levels}")));
            }
            buckets[idx as usize - 1].push(v);
        }
    }
    let members = buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| certify_antichain(dag, &b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Family::disjoint(dag.n(), members)?)
}

/// Longest-path levels, one antichain per level.
pub fn mirsky_levels(dag: &Dag) -> Family<Antichain> {
    let level = dag.longest_path_levels();
    let height = level.iter().copied().max().unwrap_or(0);
    let mut buckets = vec![Vec::new(); height];
    for (v, &l) in level.iter().enumerate() {
        buckets[l - 1].push(v);
    }
    let members = buckets.into_iter().map(Antichain::trusted).collect();
    Family::disjoint(dag.n(), members).expect("levels partition the vertices")
}

/// Pushes `k - f(ts)` units around `s, 0_in, 0_out, t` through the secondary
/// arc of vertex 0. Cost is unchanged; no-op on the empty graph.
pub fn normalize_beta(gk: &GkNetwork, f: &Flow) -> Result<Flow, GkError> {
    if gk.kind != NetworkKind::Beta {
        return Err(GkError::Invariant("only beta circulations are normalized".into()));
    }
    let missing = gk.k as i64 - f.get(gk.ts);
    if missing < 0 {
        return Err(GkError::Invariant("return arc above capacity".into()));
    }
    if gk.n == 0 || missing == 0 {
        return Ok(f.clone());
    }
    let mut values = f.values().to_vec();
    let g = gk.gadgets[0];
    for a in [g.entry, g.secondary, g.exit, gk.ts] {
        values[a] += missing;
    }
    let out = Flow::from_values(values);
    check_same_cost(&gk.net, f, &out)?;
    Ok(out)
}

fn check_same_cost(net: &FlowNetwork, a: &Flow, b: &Flow) -> Result<(), GkError> {
    b.check_feasible(net)?;
    if a.cost(net)? != b.cost(net)? {
        return Err(GkError::Invariant("normalization changed the cost".into()));
    }
    Ok(())
}
