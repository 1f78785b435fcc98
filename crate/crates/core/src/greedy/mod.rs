//! Greedy set cover over chains and antichains.
//!
//! Chain rounds take a path through the most uncovered vertices (one DP pass
//! in topological order) and keep its uncovered part. Antichain rounds take a
//! maximum antichain of the uncovered vertices, read off a minimum flow that
//! is warm-started from the previous round.

mod antichains;
mod chains;
mod path;
mod subset;

use thiserror::Error;

use crate::dag::{CertError, Vertex};
use crate::flow::FlowError;

pub use antichains::{
    greedy_antichain_cover, greedy_antichain_cover_with, greedy_k_antichains, greedy_k_antichains_with, AntichainCover,
    AntichainStats, GreedyAntichains, TieBreak,
};
pub use chains::{greedy_chain_partition, greedy_k_chains, greedy_weighted_chain_cover, WeightedCover};
pub use path::{count_optimal_paths, max_coverage_path, PathChoice};
pub use subset::{build_subset_network, max_antichain_in_subset, SubsetNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreedyError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("flow is not minimum: a decrementing path remains")]
    NotMinimum,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error("greedy invariant violated: {0}")]
    Invariant(String),
}

/// The vertices no chosen member covers yet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoveredSet {
    mark: Vec<bool>,
    count: usize,
}

impl UncoveredSet {
    pub fn full(n: usize) -> Self {
        UncoveredSet { mark: vec![true; n], count: n }
    }

    pub fn empty(n: usize) -> Self {
        UncoveredSet { mark: vec![false; n], count: 0 }
    }

    pub fn from_vertices(n: usize, vertices: &[Vertex]) -> Self {
        let mut u = UncoveredSet::empty(n);
        for &v in vertices {
            if !u.mark[v] {
                u.mark[v] = true;
                u.count += 1;
            }
        }
        u
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.mark[v]
    }

    /// Returns whether `v` was uncovered.
    pub fn remove(&mut self, v: Vertex) -> bool {
        let was = std::mem::replace(&mut self.mark[v], false);
        self.count -= was as usize;
        was
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn universe(&self) -> usize {
        self.mark.len()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.mark.len()).filter(|&v| self.mark[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    /// The uncovered part of the chosen set.
    pub member: Vec<Vertex>,
    /// The path or antichain the round picked, before restriction.
    pub raw: Vec<Vertex>,
    pub gain: usize,
    /// Uncovered vertices after the round.
    pub remaining: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The requested number of rounds ran.
    RoundLimit,
    /// The next member would gain at most the threshold.
    GainThreshold,
    /// Nothing left to cover.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    pub rounds: Vec<Round>,
    pub stop: StopReason,
}

impl GreedyTrace {
    pub fn gains(&self) -> Vec<usize> {
        self.rounds.iter().map(|r| r.gain).collect()
    }

    pub fn coverage(&self) -> usize {
        self.rounds.iter().map(|r| r.gain).sum()
    }

    pub fn gains_non_increasing(&self) -> bool {
        self.rounds.windows(2).all(|w| w[0].gain >= w[1].gain)
    }
}
