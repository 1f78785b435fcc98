use super::residual::{find_negative_cycle, residual, Cycle, Direction};
use super::{Flow, FlowError, FlowNetwork, INFINITE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CancelStep {
    pub bottleneck: i64,
    pub cycle_cost: i64,
    /// `bottleneck * -cycle_cost`, always at least 1.
    pub drop: i64,
}

#[derive(Debug, Clone)]
pub struct CirculationRun {
    pub flow: Flow,
    pub cancellations: usize,
    pub initial_cost: i64,
    pub final_cost: i64,
    pub steps: Vec<CancelStep>,
}

/// Pushes the bottleneck capacity around `cycle`, re-deriving each residual
/// capacity from `f` so stale cycles are rejected.
pub fn cancel_cycle(net: &FlowNetwork, f: &Flow, cycle: &Cycle) -> Result<(Flow, CancelStep), FlowError> {
    if cycle.is_empty() {
        return Err(FlowError::InvalidCycle("empty"));
    }
    for (i, ra) in cycle.iter().enumerate() {
        if ra.to != cycle[(i + 1) % cycle.len()].from {
            return Err(FlowError::InvalidCycle("arcs do not close up"));
        }
    }
    let mut bottleneck = i64::MAX;
    let mut cycle_cost = 0i64;
    for ra in cycle {
        let a = net.arcs().get(ra.arc).ok_or(FlowError::InvalidCycle("unknown arc"))?;
        let x = f.get(ra.arc);
        let (cap, cost, ends) = match ra.direction {
            Direction::Forward => (a.upper - x, a.cost, (a.from, a.to)),
            Direction::Backward => (x - a.lower, -a.cost, (a.to, a.from)),
        };
        if cap <= 0 || ends != (ra.from, ra.to) {
            return Err(FlowError::InvalidCycle("arc is not residual"));
        }
        bottleneck = bottleneck.min(cap);
        cycle_cost += cost;
    }
    if cycle_cost >= 0 {
        return Err(FlowError::InvalidCycle("cost is not negative"));
    }
    if bottleneck >= INFINITE / 2 {
        return Err(FlowError::Unbounded);
    }

    let mut g = f.clone();
    for ra in cycle {
        let delta = match ra.direction {
            Direction::Forward => bottleneck,
            Direction::Backward => -bottleneck,
        };
        g.add(ra.arc, delta)?;
    }
    let drop = bottleneck.checked_mul(-cycle_cost).ok_or(FlowError::Overflow)?;
    Ok((g, CancelStep { bottleneck, cycle_cost, drop }))
}

/// Cycle canceling from a feasible start. Each cancellation lowers the
/// integer cost by at least 1, so the number of rounds is bounded by the gap.
pub fn min_cost_circulation(net: &FlowNetwork, f0: &Flow) -> Result<CirculationRun, FlowError> {
    f0.check_feasible(net)?;
    let initial_cost = f0.cost(net)?;
    let mut f = f0.clone();
    let mut steps = Vec::new();
    loop {
        let res = residual(net, &f)?;
        let Some(cycle) = find_negative_cycle(&res) else { break };
        let (g, step) = cancel_cycle(net, &f, &cycle)?;
        f = g;
        steps.push(step);
    }
    let final_cost = f.cost(net)?;
    let dropped: i64 = steps.iter().map(|s| s.drop).sum();
    if dropped != initial_cost - final_cost {
        return Err(FlowError::Invariant("cost drops do not telescope".into()));
    }
    if steps.len() as i64 > initial_cost - final_cost {
        return Err(FlowError::Invariant("more cancellations than the cost gap".into()));
    }
    Ok(CirculationRun { cancellations: steps.len(), flow: f, initial_cost, final_cost, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::residual::ResidualArc;
    use crate::flow::tests::diamond;
    use crate::flow::NetworkBuilder;

    #[test]
    fn diamond_optimum() {
        let net = diamond(1);
        let run = min_cost_circulation(&net, &Flow::zero(&net)).unwrap();
        // Route 1 via the -2 arc (gain 1), 2 via the -1 arc (gain 0 each).
        assert_eq!(run.final_cost, -1);
        assert!(run.cancellations as i64 <= run.initial_cost - run.final_cost);
        let res = residual(&net, &run.flow).unwrap();
        assert!(find_negative_cycle(&res).is_none());
    }

    #[test]
    fn zero_costs_leave_flow_alone() {
        let mut b = NetworkBuilder::new(3, 0, 2);
        b.arc(0, 1);
        b.arc(1, 2);
        b.return_arc(5, 0);
        let net = b.build().unwrap();
        let f0 = Flow::from_values(vec![2, 2, 2]);
        let run = min_cost_circulation(&net, &f0).unwrap();
        assert_eq!(run.flow, f0);
        assert_eq!(run.cancellations, 0);
    }

    #[test]
    fn bottleneck_times_cost() {
        let mut b = NetworkBuilder::new(2, 0, 1);
        b.arc_with(0, 1, 0, 3, -2);
        b.return_arc(3, 0);
        let net = b.build().unwrap();
        let f = Flow::zero(&net);
        let cycle = vec![
            ResidualArc { from: 0, to: 1, capacity: 3, cost: -2, arc: 0, direction: Direction::Forward },
            ResidualArc { from: 1, to: 0, capacity: 3, cost: 0, arc: 1, direction: Direction::Forward },
        ];
        let (g, step) = cancel_cycle(&net, &f, &cycle).unwrap();
        assert_eq!(step.drop, 6);
        assert_eq!(g.cost(&net).unwrap(), -6);
        // The same cycle is no longer residual.
        assert!(matches!(cancel_cycle(&net, &g, &cycle), Err(FlowError::InvalidCycle(_))));
    }

    #[test]
    fn infeasible_start() {
        let net = diamond(1);
        let bad = Flow::from_values(vec![5, 5, 0, 0, 5]);
        assert_eq!(min_cost_circulation(&net, &bad).unwrap_err(), FlowError::Infeasible(1));
    }
}
