//! Exact solvers through the alpha and beta networks.
//!
//! Vertex `v` splits into `v_in = 2v` and `v_out = 2v + 1`, joined by a
//! primary arc (capacity 1, cost -1) and a free secondary arc; `s = 2n` and
//! `t = 2n + 1` connect to every split. A min-cost circulation in the alpha
//! network has cost `alpha_k - n`, one in the beta network has cost `-beta_k`.

mod chains;
mod extract;
mod network;
mod solve;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dag::{Antichain, CertError, Chain, Dag, DagError, Family, GraphPath, Member};
use crate::flow::FlowError;

pub use chains::{chains_from_paths, ChainExtraction};
pub use extract::{extract_antichains, mirsky_levels, normalize_beta};
pub use network::{build_network, v_in, v_out, Gadget, GkNetwork, NetworkKind};
pub use solve::{
    solve, solve_alpha, solve_alpha_with, solve_beta, solve_beta_with, AlphaSolution, BetaSolution, SolveStats,
    WarmStart,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("alpha circulation carries no flow on the return arc")]
    Degenerate,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error(transparent)]
    Greedy(#[from] crate::greedy::GreedyError),
    #[error("solution check failed: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// k disjoint antichains of maximum coverage.
    MaK,
    /// k disjoint chains of maximum coverage.
    McK,
    /// k paths of maximum coverage.
    MpK,
    /// Chain partition of minimum k-norm.
    McpK,
    /// Antichain partition of minimum k-norm.
    MapK,
    /// Antichain collection of minimum collection k-norm.
    MasK,
    /// Path collection of minimum collection k-norm.
    MpsK,
}

impl Problem {
    pub const ALL: [Problem; 7] =
        [Problem::MaK, Problem::McK, Problem::MpK, Problem::McpK, Problem::MapK, Problem::MasK, Problem::MpsK];

    pub fn name(self) -> &'static str {
        match self {
            Problem::MaK => "ma-k",
            Problem::McK => "mc-k",
            Problem::MpK => "mp-k",
            Problem::McpK => "mcp-k",
            Problem::MapK => "map-k",
            Problem::MasK => "mas-k",
            Problem::MpsK => "mps-k",
        }
    }

    /// Which network solves the problem.
    pub fn kind(self) -> NetworkKind {
        match self {
            Problem::MaK | Problem::McpK | Problem::MpsK => NetworkKind::Alpha,
            _ => NetworkKind::Beta,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown problem {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionFamily {
    Antichains(Family<Antichain>),
    Chains(Family<Chain>),
    Paths(Family<GraphPath>),
}

impl SolutionFamily {
    pub fn vertex_lists(&self) -> Vec<Vec<usize>> {
        fn lists<M: Member>(f: &Family<M>) -> Vec<Vec<usize>> {
            f.members().iter().map(|m| m.vertices().to_vec()).collect()
        }
        match self {
            SolutionFamily::Antichains(f) => lists(f),
            SolutionFamily::Chains(f) => lists(f),
            SolutionFamily::Paths(f) => lists(f),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SolutionFamily::Antichains(f) => f.len(),
            SolutionFamily::Chains(f) => f.len(),
            SolutionFamily::Paths(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A certified answer to one problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkSolution {
    pub problem: Problem,
    pub k: usize,
    /// Coverage for MA-k, MC-k, MP-k; k-norm otherwise.
    pub value: usize,
    pub family: SolutionFamily,
    /// Per member: `true` for padding paths that add no coverage.
    pub synthetic: Vec<bool>,
}

impl GkSolution {
    pub(crate) fn new(problem: Problem, k: usize, value: usize, family: SolutionFamily) -> Self {
        let synthetic = vec![false; family.len()];
        GkSolution { problem, k, value, family, synthetic }
    }

    /// Value the family actually achieves for its problem.
    pub fn recompute(&self) -> Result<usize, GkError> {
        let k = self.k;
        Ok(match (&self.problem, &self.family) {
            (Problem::MaK, SolutionFamily::Antichains(f)) => f.coverage(),
            (Problem::McK, SolutionFamily::Chains(f)) => f.coverage(),
            (Problem::MpK, SolutionFamily::Paths(f)) => f.coverage(),
            (Problem::McpK, SolutionFamily::Chains(f)) => f.knorm_partition(k)?,
            (Problem::MapK, SolutionFamily::Antichains(f)) => f.knorm_partition(k)?,
            (Problem::MasK, SolutionFamily::Antichains(f)) => f.knorm_collection(k),
            (Problem::MpsK, SolutionFamily::Paths(f)) => f.knorm_collection(k),
            _ => return Err(GkError::Invariant(format!("{} cannot hold this family kind", self.problem))),
        })
    }

    /// Re-certifies every member against `dag` and checks the stored value
    /// and the member-count limits of the problem.
    pub fn verify(&self, dag: &Dag) -> Result<(), GkError> {
        let lists = self.family.vertex_lists();
        for m in &lists {
            match self.family {
                SolutionFamily::Antichains(_) => drop(crate::dag::certify_antichain(dag, m)?),
                SolutionFamily::Chains(_) => drop(crate::dag::certify_chain(dag, m)?),
                SolutionFamily::Paths(_) => drop(crate::dag::certify_path(dag, m)?),
            }
        }
        let got = self.recompute()?;
        if got != self.value {
            return Err(GkError::Invariant(format!(
                "{} stores {} but its family gives {got}",
                self.problem, self.value
            )));
        }
        let bounded = matches!(self.problem, Problem::MaK | Problem::McK | Problem::MpK);
        if bounded && lists.len() > self.k {
            return Err(GkError::Invariant(format!("{} has {} members for k = {}", self.problem, lists.len(), self.k)));
        }
        if self.problem == Problem::MpK && dag.n() > 0 && lists.len() != self.k {
            return Err(GkError::Invariant("mp-k must list exactly k paths".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert!("mx-k".parse::<Problem>().is_err());
    }
}
