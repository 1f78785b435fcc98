use crate::dag::{certify_path, Dag, Family, GraphPath, Member};
use crate::flow::{decompose, find_negative_cycle, min_cost_circulation, reconstruct, residual, Flow, NetworkPath};
use crate::greedy::{greedy_k_chains, greedy_weighted_chain_cover};

use super::chains::chains_from_paths;
use super::extract::{extract_antichains, mirsky_levels, normalize_beta};
use super::network::{build_network, GkNetwork, NetworkKind};
use super::{GkError, GkSolution, Problem, SolutionFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WarmStart {
    /// The zero circulation.
    #[default]
    Zero,
    /// Greedy paths: the weighted chain cover for alpha, k greedy paths for beta.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub cancellations: usize,
    pub initial_cost: i64,
    pub final_cost: i64,
    /// Units of flow decomposed into paths.
    pub paths: usize,
    /// Chain remnants cut during chain extraction.
    pub chain_splits: usize,
    /// Alpha only: the optimum has no return flow and Mirsky levels were used.
    pub degenerate: bool,
}

impl SolveStats {
    /// Cycle canceling may not run longer than the cost gap.
    pub fn within_cancel_bound(&self) -> bool {
        self.cancellations as i64 <= self.initial_cost - self.final_cost
    }
}

#[derive(Debug, Clone)]
pub struct AlphaSolution {
    pub alpha: usize,
    pub mps: GkSolution,
    pub mcp: GkSolution,
    pub ma: GkSolution,
    pub network: GkNetwork,
    pub flow: Flow,
    pub stats: SolveStats,
}

#[derive(Debug, Clone)]
pub struct BetaSolution {
    pub beta: usize,
    pub mp: GkSolution,
    pub mc: GkSolution,
    pub mas: GkSolution,
    pub map: GkSolution,
    pub network: GkNetwork,
    /// Optimal circulation with `f(t, s) = k`.
    pub flow: Flow,
    pub stats: SolveStats,
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), GkError> {
    if cond {
        Ok(())
    } else {
        Err(GkError::Invariant(what()))
    }
}

/// Min-cost circulation plus the optimality and decomposition checks every
/// solve runs.
fn optimize(gk: &GkNetwork, f0: &Flow) -> Result<(Flow, Vec<NetworkPath>, SolveStats), GkError> {
    let run = min_cost_circulation(&gk.net, f0)?;
    let f = run.flow;
    check(find_negative_cycle(&residual(&gk.net, &f)?).is_none(), || "negative residual cycle left".into())?;
    gk.check_gadgets(&f)?;
    let paths = decompose(&gk.net, &f)?;
    check(reconstruct(&gk.net, &paths) == f, || "decomposition does not rebuild the flow".into())?;
    let stats = SolveStats {
        cancellations: run.cancellations,
        initial_cost: run.initial_cost,
        final_cost: run.final_cost,
        paths: paths.len(),
        ..SolveStats::default()
    };
    check(stats.within_cancel_bound(), || "too many cancellations".into())?;
    Ok((f, paths, stats))
}

fn dag_paths(dag: &Dag, gk: &GkNetwork, paths: &[NetworkPath]) -> Result<Vec<GraphPath>, GkError> {
    paths.iter().map(|p| Ok(certify_path(dag, &gk.dag_path(p))?)).collect()
}

pub fn solve_alpha(dag: &Dag, k: usize) -> Result<AlphaSolution, GkError> {
    solve_alpha_with(dag, k, WarmStart::Greedy)
}

/// MPS-k, MCP-k and MA-k from one alpha circulation; all three values are alpha_k.
pub fn solve_alpha_with(dag: &Dag, k: usize, warm: WarmStart) -> Result<AlphaSolution, GkError> {
    let gk = build_network(dag, k, NetworkKind::Alpha)?;
    let n = dag.n();
    let f0 = match warm {
        WarmStart::Zero => Flow::zero(&gk.net),
        WarmStart::Greedy => {
            let cover = greedy_weighted_chain_cover(dag, k)?;
            let raw: Vec<Vec<usize>> = cover.paths.iter().map(|p| p.vertices().to_vec()).collect();
            gk.flow_from_paths(dag, &raw)?
        }
    };
    let (f, paths, mut stats) = optimize(&gk, &f0)?;
    let alpha = usize::try_from(stats.final_cost + n as i64)
        .map_err(|_| GkError::Invariant("alpha circulation cost below -n".into()))?;

    let graph_paths = dag_paths(dag, &gk, &paths)?;
    let mps_family = Family::collection(n, graph_paths.clone())?;
    check(mps_family.knorm_collection(k) == alpha, || "path collection norm differs from alpha_k".into())?;

    let chains = chains_from_paths(dag, &graph_paths)?;
    stats.chain_splits = chains.splits;
    check(chains.chains.members().iter().all(|c| c.len() >= k), || "an extracted chain is shorter than k".into())?;
    let mcp_family = chains.chains.partition_completion()?;

    let ma_family = if f.get(gk.ts) == 0 {
        stats.degenerate = true;
        let levels = mirsky_levels(dag);
        check(levels.len() <= k, || "no return flow but the height exceeds k".into())?;
        levels
    } else {
        extract_antichains(dag, &gk, &f)?
    };

    let mps = GkSolution::new(Problem::MpsK, k, alpha, SolutionFamily::Paths(mps_family));
    let mcp = GkSolution::new(Problem::McpK, k, alpha, SolutionFamily::Chains(mcp_family));
    let ma = GkSolution::new(Problem::MaK, k, alpha, SolutionFamily::Antichains(ma_family));
    for s in [&mps, &mcp, &ma] {
        s.verify(dag)?;
    }
    Ok(AlphaSolution { alpha, mps, mcp, ma, network: gk, flow: f, stats })
}

pub fn solve_beta(dag: &Dag, k: usize) -> Result<BetaSolution, GkError> {
    solve_beta_with(dag, k, WarmStart::Zero)
}

/// MP-k, MC-k, MAS-k and MAP-k from one beta circulation; all four values are beta_k.
pub fn solve_beta_with(dag: &Dag, k: usize, warm: WarmStart) -> Result<BetaSolution, GkError> {
    let gk = build_network(dag, k, NetworkKind::Beta)?;
    let n = dag.n();
    let f0 = match warm {
        WarmStart::Zero => Flow::zero(&gk.net),
        WarmStart::Greedy => {
            let (_, trace) = greedy_k_chains(dag, k)?;
            let raw: Vec<Vec<usize>> = trace.rounds.iter().filter(|r| r.gain > 0).map(|r| r.raw.clone()).collect();
            gk.flow_from_paths(dag, &raw)?
        }
    };
    let (f, paths, stats) = optimize(&gk, &f0)?;
    let beta = usize::try_from(-stats.final_cost)
        .map_err(|_| GkError::Invariant("beta circulation has positive cost".into()))?;

    let graph_paths = dag_paths(dag, &gk, &paths)?;
    let chains = chains_from_paths(dag, &graph_paths)?;
    let mut stats = stats;
    stats.chain_splits = chains.splits;

    let padding = if n == 0 { 0 } else { k - graph_paths.len() };
    let mut mp_members = graph_paths;
    let real = mp_members.len();
    mp_members.extend((0..padding).map(|_| GraphPath::singleton(0)));
    let mp_family = Family::collection(n, mp_members)?;

    let normalized = normalize_beta(&gk, &f)?;
    let again = decompose(&gk.net, &normalized)?;
    check(reconstruct(&gk.net, &again) == normalized, || "normalized flow does not decompose".into())?;
    let mas_family = extract_antichains(dag, &gk, &normalized)?;
    let map_family = mas_family.partition_completion()?;

    let mut mp = GkSolution::new(Problem::MpK, k, beta, SolutionFamily::Paths(mp_family));
    mp.synthetic = (0..real + padding).map(|i| i >= real).collect();
    let mc = GkSolution::new(Problem::McK, k, beta, SolutionFamily::Chains(chains.chains));
    let mas = GkSolution::new(Problem::MasK, k, beta, SolutionFamily::Antichains(mas_family));
    let map = GkSolution::new(Problem::MapK, k, beta, SolutionFamily::Antichains(map_family));
    for s in [&mp, &mc, &mas, &map] {
        s.verify(dag)?;
    }
    Ok(BetaSolution { beta, mp, mc, mas, map, network: gk, flow: normalized, stats })
}

/// The solution of one problem; `warm` selects the initial circulation.
pub fn solve(dag: &Dag, problem: Problem, k: usize, warm: WarmStart) -> Result<(GkSolution, SolveStats), GkError> {
    Ok(match problem.kind() {
        NetworkKind::Alpha => {
            let warm = if warm == WarmStart::Zero { WarmStart::Greedy } else { warm };
            let s = solve_alpha_with(dag, k, warm)?;
            let pick = match problem {
                Problem::MaK => s.ma,
                Problem::McpK => s.mcp,
                _ => s.mps,
            };
            (pick, s.stats)
        }
        NetworkKind::Beta => {
            let s = solve_beta_with(dag, k, warm)?;
            let pick = match problem {
                Problem::MpK => s.mp,
                Problem::McK => s.mc,
                Problem::MasK => s.mas,
                _ => s.map,
            };
            (pick, s.stats)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::tests::sample_dag;
    use crate::flow::shortest_distances;

    fn path_dag(n: usize) -> Dag {
        Dag::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn sample_dag_alpha_two() {
        let dag = sample_dag();
        for warm in [WarmStart::Zero, WarmStart::Greedy] {
            let s = solve_alpha_with(&dag, 2, warm).unwrap();
            assert_eq!(s.alpha, 8);
            assert_eq!(s.stats.final_cost, -1);
            assert_eq!(s.ma.family.len(), 2);
            assert_eq!(s.ma.value, 8);
            assert_eq!(s.mps.value, 8);
            assert_eq!(s.mcp.value, 8);
            assert!(s.stats.within_cancel_bound());
            let res = residual(&s.network.net, &s.flow).unwrap();
            let d = shortest_distances(&res, s.network.source()).unwrap();
            assert_eq!(d.get(s.network.source()).unwrap() - d.get(s.network.sink()).unwrap(), 2);
        }
    }

    #[test]
    fn sample_dag_beta_two() {
        // Every chain of three vertices passes through v5, so two chains cover at most 5.
        let dag = sample_dag();
        let s = solve_beta(&dag, 2).unwrap();
        assert_eq!(s.beta, 5);
        assert_eq!(s.stats.final_cost, -5);
        assert_eq!(s.mp.family.len(), 2);
        assert_eq!(s.mc.value, 5);
        assert_eq!(s.mc.family.len(), 2);
        assert_eq!(s.mas.value, 5);
        assert_eq!(s.map.value, 5);
        let res = residual(&s.network.net, &s.flow).unwrap();
        let d = shortest_distances(&res, s.network.source()).unwrap();
        assert!(d.d.iter().all(|x| x.unwrap() <= 0));
        assert!(d.is_potential(&res));
        let warm = solve_beta_with(&dag, 2, WarmStart::Greedy).unwrap();
        assert_eq!(warm.beta, 5);
        assert_eq!(solve_beta(&dag, 1).unwrap().beta, 3);
    }

    #[test]
    fn beta_normalization_pads() {
        let dag = sample_dag();
        let s = solve_beta(&dag, 3).unwrap();
        assert_eq!(s.flow.get(s.network.ts), 3);
        assert_eq!(s.flow.cost(&s.network.net).unwrap(), -(s.beta as i64));
        assert_eq!(s.mp.family.len(), 3);
    }

    #[test]
    fn tiny_cases() {
        let one = Dag::empty(1);
        let s = solve_alpha(&one, 1).unwrap();
        assert_eq!(s.alpha, 1);
        assert_eq!(s.ma.family.vertex_lists(), vec![vec![0]]);

        let p4 = path_dag(4);
        let s = solve_alpha(&p4, 2).unwrap();
        assert_eq!(s.alpha, 2);
        assert_eq!(s.mps.family.vertex_lists(), vec![vec![0, 1, 2, 3]]);

        let p5 = path_dag(5);
        let s = solve_beta(&p5, 1).unwrap();
        assert_eq!(s.beta, 5);
        assert_eq!(s.mc.family.vertex_lists(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn edgeless_graph_is_one_antichain() {
        let dag = Dag::empty(5);
        for k in 1..4 {
            let s = solve_alpha(&dag, k).unwrap();
            assert_eq!(s.alpha, 5);
            assert_eq!(s.ma.family.vertex_lists(), vec![vec![0, 1, 2, 3, 4]]);
        }
    }

    #[test]
    fn degenerate_alpha_uses_levels() {
        // Height 2 <= k: no path pays for its return arc.
        let dag = Dag::new(4, [(0, 1), (2, 3)]).unwrap();
        let s = solve_alpha_with(&dag, 2, WarmStart::Zero).unwrap();
        assert!(s.stats.degenerate);
        assert_eq!(s.alpha, 4);
        assert_eq!(s.ma.family.len(), 2);
    }

    #[test]
    fn empty_graph() {
        let dag = Dag::empty(0);
        assert_eq!(solve_alpha(&dag, 2).unwrap().alpha, 0);
        assert_eq!(solve_beta(&dag, 2).unwrap().beta, 0);
    }

    #[test]
    fn zero_k_rejected() {
        assert_eq!(solve_alpha(&sample_dag(), 0).unwrap_err(), GkError::ZeroK);
    }
}
