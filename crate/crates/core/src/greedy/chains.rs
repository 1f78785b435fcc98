use crate::dag::{Chain, Dag, Family, GraphPath, Member, Vertex};

use super::path::max_coverage_path;
use super::{GreedyError, GreedyTrace, Round, StopReason, UncoveredSet};

/// One round: pick the best path, keep its uncovered vertices as the member.
fn take_path(dag: &Dag, u: &mut UncoveredSet) -> (Round, GraphPath) {
    let choice = max_coverage_path(dag, u);
    let member: Vec<Vertex> = choice.path.vertices().iter().copied().filter(|&v| u.remove(v)).collect();
    debug_assert_eq!(member.len(), choice.gain);
    let round = Round { member, raw: choice.path.vertices().to_vec(), gain: choice.gain, remaining: u.len() };
    (round, choice.path)
}

fn chain_family(n: usize, rounds: &[Round]) -> Result<Family<Chain>, GreedyError> {
    let members = rounds.iter().map(|r| Chain::trusted(r.member.clone())).collect();
    Ok(Family::disjoint(n, members)?)
}

/// At most `k` disjoint chains, each the uncovered part of a best path.
pub fn greedy_k_chains(dag: &Dag, k: usize) -> Result<(Family<Chain>, GreedyTrace), GreedyError> {
    if k == 0 {
        return Err(GreedyError::ZeroK);
    }
    let mut u = UncoveredSet::full(dag.n());
    let mut rounds = Vec::new();
    let mut stop = StopReason::RoundLimit;
    while rounds.len() < k {
        if u.is_empty() {
            stop = StopReason::Exhausted;
            break;
        }
        rounds.push(take_path(dag, &mut u).0);
    }
    let trace = GreedyTrace { rounds, stop };
    if !trace.gains_non_increasing() {
        return Err(GreedyError::Invariant("greedy chain gains increased".into()));
    }
    Ok((chain_family(dag.n(), &trace.rounds)?, trace))
}

/// Best paths until every vertex is covered. Returns the raw paths, so
/// they may overlap.
pub fn greedy_chain_partition(dag: &Dag) -> (Vec<GraphPath>, GreedyTrace) {
    let mut u = UncoveredSet::full(dag.n());
    let mut rounds = Vec::new();
    let mut paths = Vec::new();
    while !u.is_empty() {
        let (round, path) = take_path(dag, &mut u);
        rounds.push(round);
        paths.push(path);
    }
    (paths, GreedyTrace { rounds, stop: StopReason::Exhausted })
}

#[derive(Debug, Clone)]
pub struct WeightedCover {
    /// Paths that each covered more than `k` new vertices.
    pub paths: Vec<GraphPath>,
    /// The same paths as a collection; its k-norm charges `k` per path.
    pub collection: Family<GraphPath>,
    /// Their uncovered parts plus one singleton per leftover vertex.
    pub partition: Family<Chain>,
    pub trace: GreedyTrace,
}

/// Greedy cover with per-member weight `k`: take best paths while they gain
/// more than `k`, then cover the rest by singletons.
pub fn greedy_weighted_chain_cover(dag: &Dag, k: usize) -> Result<WeightedCover, GreedyError> {
    if k == 0 {
        return Err(GreedyError::ZeroK);
    }
    let mut u = UncoveredSet::full(dag.n());
    let mut rounds = Vec::new();
    let mut paths = Vec::new();
    let stop = loop {
        if u.is_empty() {
            break StopReason::Exhausted;
        }
        if max_coverage_path(dag, &u).gain <= k {
            break StopReason::GainThreshold;
        }
        let (round, path) = take_path(dag, &mut u);
        rounds.push(round);
        paths.push(path);
    };
    let partition = chain_family(dag.n(), &rounds)?.partition_completion()?;
    let collection = Family::collection(dag.n(), paths.clone())?;
    Ok(WeightedCover { paths, collection, partition, trace: GreedyTrace { rounds, stop } })
}
