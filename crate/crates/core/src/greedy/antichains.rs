use crate::dag::{certify_antichain, Antichain, Dag, Family, Member, Vertex};
use crate::flow::{min_flow, Flow};

use super::chains::greedy_chain_partition;
use super::subset::{build_subset_network, max_antichain_in_subset, SubsetNetwork};
use super::{GreedyError, GreedyTrace, Round, StopReason, UncoveredSet};

/// Which maximum antichain a round takes when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// The one read directly off the minimum flow's residual graph.
    Canonical,
    /// The lexicographically smallest sorted id list, found by probing
    /// each candidate with one more minimum flow.
    #[default]
    LowestIds,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AntichainStats {
    /// Value of the starting flow built from greedy paths.
    pub initial_value: i64,
    /// Minimum flow value of each round, equal to that round's antichain size.
    pub flow_values: Vec<i64>,
    pub decrements: usize,
    /// Decrementing-path searches in rounds after the first.
    pub warm_searches: usize,
    /// Minimum flows run by [`TieBreak::LowestIds`] probes.
    pub probes: usize,
    pub probe_searches: usize,
}

impl AntichainStats {
    /// Warm-started rounds search at most once per unit of value lost, plus once per round.
    pub fn within_search_bound(&self) -> bool {
        let (Some(first), Some(last)) = (self.flow_values.first(), self.flow_values.last()) else {
            return true;
        };
        let rounds = self.flow_values.len() as i64;
        self.warm_searches as i64 <= (rounds - 1) + first - last
    }
}

struct Engine<'a> {
    dag: &'a Dag,
    sn: SubsetNetwork,
    flow: Flow,
    uncovered: UncoveredSet,
    tie: TieBreak,
    stats: AntichainStats,
}

impl<'a> Engine<'a> {
    fn new(dag: &'a Dag, tie: TieBreak) -> Result<Self, GreedyError> {
        let uncovered = UncoveredSet::full(dag.n());
        let sn = build_subset_network(dag, &uncovered);
        let (paths, _) = greedy_chain_partition(dag);
        let raw: Vec<Vec<Vertex>> = paths.iter().map(|p| p.vertices().to_vec()).collect();
        let flow = sn.flow_from_paths(dag, &raw)?;
        let stats = AntichainStats { initial_value: flow.value(&sn.net), ..AntichainStats::default() };
        Ok(Engine { dag, sn, flow, uncovered, tie, stats })
    }

    /// Maximum antichain of the uncovered vertices, or `None` once all are covered.
    fn next(&mut self) -> Result<Option<Antichain>, GreedyError> {
        if self.uncovered.is_empty() {
            return Ok(None);
        }
        self.sn.set_subset(&self.uncovered);
        let run = min_flow(&self.sn.net, &self.flow)?;
        if !self.stats.flow_values.is_empty() {
            self.stats.warm_searches += run.searches;
        }
        self.stats.decrements += run.decrements;
        self.flow = run.flow;
        let value = self.flow.value(&self.sn.net);
        self.stats.flow_values.push(value);
        let a = match self.tie {
            TieBreak::Canonical => max_antichain_in_subset(self.dag, &self.sn, &self.flow)?,
            TieBreak::LowestIds => self.lowest_ids(value)?,
        };
        if a.len() as i64 != value {
            return Err(GreedyError::Invariant(format!("antichain of size {} for flow value {value}", a.len())));
        }
        Ok(Some(a))
    }

    /// Walks candidates in id order, keeping `v` iff the candidates
    /// incomparable to `v` still hold an antichain of the remaining size.
    fn lowest_ids(&mut self, width: i64) -> Result<Antichain, GreedyError> {
        let mut sn = self.sn.clone();
        let mut pool = self.uncovered.clone();
        let mut flow = self.flow.clone();
        let mut need = width;
        let mut chosen = Vec::new();
        for v in 0..self.dag.n() {
            if need == 0 {
                break;
            }
            if !pool.contains(v) {
                continue;
            }
            let mut rest = pool.clone();
            for c in self.dag.comparable(v) {
                rest.remove(c);
            }
            sn.set_subset(&rest);
            let run = min_flow(&sn.net, &flow)?;
            self.stats.probes += 1;
            self.stats.probe_searches += run.searches;
            if run.flow.value(&sn.net) == need - 1 {
                chosen.push(v);
                pool = rest;
                flow = run.flow;
                need -= 1;
            } else {
                pool.remove(v);
            }
        }
        if need != 0 {
            return Err(GreedyError::Invariant("probing lost the maximum antichain".into()));
        }
        Ok(certify_antichain(self.dag, &chosen)?)
    }

    fn commit(&mut self, a: &Antichain) -> Round {
        for &v in a.vertices() {
            self.uncovered.remove(v);
        }
        Round {
            member: a.vertices().to_vec(),
            raw: a.vertices().to_vec(),
            gain: a.len(),
            remaining: self.uncovered.len(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GreedyAntichains {
    pub family: Family<Antichain>,
    pub trace: GreedyTrace,
    pub stats: AntichainStats,
}

pub fn greedy_k_antichains(dag: &Dag, k: usize) -> Result<GreedyAntichains, GreedyError> {
    greedy_k_antichains_with(dag, k, TieBreak::default())
}

/// Up to `k` rounds of maximum antichains over the uncovered vertices.
pub fn greedy_k_antichains_with(dag: &Dag, k: usize, tie: TieBreak) -> Result<GreedyAntichains, GreedyError> {
    if k == 0 {
        return Err(GreedyError::ZeroK);
    }
    let mut engine = Engine::new(dag, tie)?;
    let mut rounds = Vec::new();
    let mut members = Vec::new();
    let mut stop = StopReason::RoundLimit;
    while rounds.len() < k {
        let Some(a) = engine.next()? else {
            stop = StopReason::Exhausted;
            break;
        };
        rounds.push(engine.commit(&a));
        members.push(a);
    }
    finish(dag, engine, rounds, members, stop).map(|(family, trace, stats)| GreedyAntichains { family, trace, stats })
}

fn finish(
    dag: &Dag,
    engine: Engine<'_>,
    rounds: Vec<Round>,
    members: Vec<Antichain>,
    stop: StopReason,
) -> Result<(Family<Antichain>, GreedyTrace, AntichainStats), GreedyError> {
    let trace = GreedyTrace { rounds, stop };
    if !trace.gains_non_increasing() {
        return Err(GreedyError::Invariant("greedy antichain gains increased".into()));
    }
    if !engine.stats.within_search_bound() {
        return Err(GreedyError::Invariant("too many decrementing-path searches".into()));
    }
    Ok((Family::disjoint(dag.n(), members)?, trace, engine.stats))
}

#[derive(Debug, Clone)]
pub struct AntichainCover {
    /// Antichains that each covered more than `k` new vertices.
    pub collection: Family<Antichain>,
    /// The collection plus one singleton per leftover vertex, in id order.
    pub partition: Family<Antichain>,
    pub trace: GreedyTrace,
    pub stats: AntichainStats,
}

pub fn greedy_antichain_cover(dag: &Dag, k: usize) -> Result<AntichainCover, GreedyError> {
    greedy_antichain_cover_with(dag, k, TieBreak::default())
}

/// Greedy antichains while the next one has more than `k` vertices, then singletons.
pub fn greedy_antichain_cover_with(dag: &Dag, k: usize, tie: TieBreak) -> Result<AntichainCover, GreedyError> {
    if k == 0 {
        return Err(GreedyError::ZeroK);
    }
    let mut engine = Engine::new(dag, tie)?;
    let mut rounds = Vec::new();
    let mut members = Vec::new();
    let stop = loop {
        match engine.next()? {
            None => break StopReason::Exhausted,
            Some(a) if a.len() <= k => break StopReason::GainThreshold,
            Some(a) => {
                rounds.push(engine.commit(&a));
                members.push(a);
            }
        }
    };
    let (collection, trace, stats) = finish(dag, engine, rounds, members, stop)?;
    let partition = collection.partition_completion()?;
    Ok(AntichainCover { collection, partition, trace, stats })
}
