//! Exponential-time ground truth for tiny DAGs.
//!
//! Everything is a DP over vertex bitmasks. Precomputed comparability masks
//! classify every subset as chain and/or antichain; partitions of a mask are
//! built by always placing its lowest vertex first, so each partition is seen
//! once and the work is `3^n` per table.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::dag::{Antichain, Chain, Dag, Family, Member};
use crate::gk::{solve_alpha, solve_beta, GkError};
use crate::greedy::{greedy_k_antichains, greedy_k_chains, GreedyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_k: usize,
    /// Cap on submask steps of one table (`3^n`).
    pub max_steps: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_n: 10, max_k: 4, max_steps: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance exceeds the oracle budget: {0}")]
    BudgetExceeded(String),
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Solver(#[from] GkError),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
    #[error("{0}")]
    Mismatch(Box<Mismatch>),
}

/// Disagreement between oracle and solver, with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub report: GkReport,
    pub what: String,
    pub oracle_witnesses: Vec<Vec<Vec<usize>>>,
    pub solver_witnesses: Vec<Vec<Vec<usize>>>,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} on n={} edges={:?}: {:?}", self.what, self.n, self.edges, self.report)
    }
}

/// Chain/antichain classification of every vertex subset.
pub struct Oracle<'a> {
    dag: &'a Dag,
    budget: OracleBudget,
    is_antichain: Vec<bool>,
    is_chain: Vec<bool>,
}

impl<'a> Oracle<'a> {
    pub fn new(dag: &'a Dag, budget: OracleBudget) -> Result<Self, OracleError> {
        let n = dag.n();
        if n > budget.max_n || n > 24 {
            return Err(OracleError::BudgetExceeded(format!("n = {n} > {}", budget.max_n)));
        }
        let steps = 3u64.pow(n as u32);
        if steps > budget.max_steps {
            return Err(OracleError::BudgetExceeded(format!("3^{n} steps > {}", budget.max_steps)));
        }
        let mut comp = vec![0u32; n];
        for (u, row) in comp.iter_mut().enumerate() {
            for v in 0..n {
                if u != v && (dag.reaches(u, v) || dag.reaches(v, u)) {
                    *row |= 1 << v;
                }
            }
        }
        let size = 1usize << n;
        let mut is_antichain = vec![true; size];
        let mut is_chain = vec![true; size];
        for mask in 1..size {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let incomparable = !comp[v] & !(1u32 << v);
            is_antichain[mask] = is_antichain[rest] && (rest as u32 & comp[v]) == 0;
            is_chain[mask] = is_chain[rest] && (rest as u32 & incomparable) == 0;
        }
        Ok(Oracle { dag, budget, is_antichain, is_chain })
    }

    fn check_k(&self, k: usize) -> Result<(), OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroK);
        }
        if k > self.budget.max_k {
            return Err(OracleError::BudgetExceeded(format!("k = {k} > {}", self.budget.max_k)));
        }
        Ok(())
    }

    /// `best[mask]` = minimum of `sum weight(class)` over partitions of `mask`
    /// into classes accepted by `allowed`, with the first class chosen.
    fn partition_table(&self, allowed: &[bool], weight: impl Fn(u32) -> u32) -> (Vec<u32>, Vec<usize>) {
        let size = allowed.len();
        let mut best = vec![u32::MAX; size];
        let mut first = vec![0usize; size];
        best[0] = 0;
        for mask in 1..size {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut sub = rest;
            loop {
                let class = sub | low;
                if allowed[class] && best[mask ^ class] != u32::MAX {
                    let c = best[mask ^ class] + weight(class.count_ones());
                    if c < best[mask] {
                        best[mask] = c;
                        first[mask] = class;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        (best, first)
    }

    fn classes(first: &[usize], mut mask: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        while mask != 0 {
            let class = first[mask];
            out.push((0..usize::BITS as usize).filter(|&v| class >> v & 1 == 1).collect());
            mask ^= class;
        }
        out
    }

    fn chain_family(&self, classes: Vec<Vec<usize>>) -> Family<Chain> {
        let members = classes
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|&v| self.dag.topo_position(v));
                Chain::trusted(c)
            })
            .collect();
        Family::disjoint(self.dag.n(), members).expect("partition classes are disjoint")
    }

    fn antichain_family(&self, classes: Vec<Vec<usize>>) -> Family<Antichain> {
        let members = classes.into_iter().map(Antichain::trusted).collect();
        Family::disjoint(self.dag.n(), members).expect("partition classes are disjoint")
    }

    /// The largest mask that splits into at most `k` allowed classes.
    fn max_cover(&self, allowed: &[bool], k: usize) -> (usize, Vec<Vec<usize>>) {
        let (count, first) = self.partition_table(allowed, |_| 1);
        let best = (0..allowed.len())
            .filter(|&m| count[m] as usize <= k)
            .max_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m)))
            .unwrap_or(0);
        (best.count_ones() as usize, Self::classes(&first, best))
    }

    pub fn alpha(&self, k: usize) -> Result<(usize, Family<Antichain>), OracleError> {
        self.check_k(k)?;
        let (value, classes) = self.max_cover(&self.is_antichain, k);
        Ok((value, self.antichain_family(classes)))
    }

    pub fn beta(&self, k: usize) -> Result<(usize, Family<Chain>), OracleError> {
        self.check_k(k)?;
        let (value, classes) = self.max_cover(&self.is_chain, k);
        Ok((value, self.chain_family(classes)))
    }

    pub fn min_knorm_chain_partition(&self, k: usize) -> Result<(usize, Family<Chain>), OracleError> {
        self.check_k(k)?;
        let (best, first) = self.partition_table(&self.is_chain, |s| s.min(k as u32));
        let full = self.is_chain.len() - 1;
        Ok((best[full] as usize, self.chain_family(Self::classes(&first, full))))
    }

    pub fn min_knorm_antichain_partition(&self, k: usize) -> Result<(usize, Family<Antichain>), OracleError> {
        self.check_k(k)?;
        let (best, first) = self.partition_table(&self.is_antichain, |s| s.min(k as u32));
        let full = self.is_antichain.len() - 1;
        Ok((best[full] as usize, self.antichain_family(Self::classes(&first, full))))
    }
}

pub fn brute_alpha(dag: &Dag, k: usize, budget: OracleBudget) -> Result<(usize, Family<Antichain>), OracleError> {
    Oracle::new(dag, budget)?.alpha(k)
}

pub fn brute_beta(dag: &Dag, k: usize, budget: OracleBudget) -> Result<(usize, Family<Chain>), OracleError> {
    Oracle::new(dag, budget)?.beta(k)
}

pub fn brute_min_knorm_chain_partition(dag: &Dag, k: usize, budget: OracleBudget) -> Result<usize, OracleError> {
    Ok(Oracle::new(dag, budget)?.min_knorm_chain_partition(k)?.0)
}

pub fn brute_min_knorm_antichain_partition(dag: &Dag, k: usize, budget: OracleBudget) -> Result<usize, OracleError> {
    Ok(Oracle::new(dag, budget)?.min_knorm_antichain_partition(k)?.0)
}

/// The five-way comparison behind each side of the duality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GkReport {
    pub k: usize,
    pub brute_alpha: usize,
    pub min_chain_partition_norm: usize,
    pub solve_alpha: usize,
    /// Coverage of the extracted k antichains.
    pub antichain_coverage: usize,
    /// Collection norm of the decomposed path family.
    pub path_collection_norm: usize,
    pub brute_beta: usize,
    pub min_antichain_partition_norm: usize,
    pub solve_beta: usize,
    /// Coverage of the decomposed k paths.
    pub path_coverage: usize,
    /// Collection norm of the extracted antichains.
    pub antichain_collection_norm: usize,
}

impl GkReport {
    fn alpha_agrees(&self) -> bool {
        let a = self.brute_alpha;
        [self.min_chain_partition_norm, self.solve_alpha, self.antichain_coverage, self.path_collection_norm]
            .iter()
            .all(|&x| x == a)
    }

    fn beta_agrees(&self) -> bool {
        let b = self.brute_beta;
        [self.min_antichain_partition_norm, self.solve_beta, self.path_coverage, self.antichain_collection_norm]
            .iter()
            .all(|&x| x == b)
    }
}

fn lists<M: Member>(f: &Family<M>) -> Vec<Vec<usize>> {
    f.members().iter().map(|m| m.vertices().to_vec()).collect()
}

/// Checks both dualities on one instance against the flow solvers.
pub fn verify_gk(dag: &Dag, k: usize, budget: OracleBudget) -> Result<GkReport, OracleError> {
    let oracle = Oracle::new(dag, budget)?;
    let (brute_alpha, alpha_witness) = oracle.alpha(k)?;
    let (chain_norm, chain_witness) = oracle.min_knorm_chain_partition(k)?;
    let (brute_beta, beta_witness) = oracle.beta(k)?;
    let (antichain_norm, antichain_witness) = oracle.min_knorm_antichain_partition(k)?;
    let a = solve_alpha(dag, k)?;
    let b = solve_beta(dag, k)?;
    let report = GkReport {
        k,
        brute_alpha,
        min_chain_partition_norm: chain_norm,
        solve_alpha: a.alpha,
        antichain_coverage: a.ma.recompute()?,
        path_collection_norm: a.mps.recompute()?,
        brute_beta,
        min_antichain_partition_norm: antichain_norm,
        solve_beta: b.beta,
        path_coverage: b.mp.recompute()?,
        antichain_collection_norm: b.mas.recompute()?,
    };
    let mismatch = |what: &str, oracle_witnesses, solver_witnesses| {
        OracleError::Mismatch(Box::new(Mismatch {
            n: dag.n(),
            edges: dag.edges().to_vec(),
            report,
            what: what.into(),
            oracle_witnesses,
            solver_witnesses,
        }))
    };
    if !report.alpha_agrees() {
        return Err(mismatch(
            "alpha side disagrees",
            vec![lists(&alpha_witness), lists(&chain_witness)],
            vec![a.ma.family.vertex_lists(), a.mps.family.vertex_lists()],
        ));
    }
    if !report.beta_agrees() {
        return Err(mismatch(
            "beta side disagrees",
            vec![lists(&beta_witness), lists(&antichain_witness)],
            vec![b.mp.family.vertex_lists(), b.mas.family.vertex_lists()],
        ));
    }
    Ok(report)
}

/// Random DAG: each pair `i < j` of a random vertex order is an edge with probability `p`.
pub fn random_dag(n: usize, p: f64, rng: &mut impl Rng) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag::new(n, edges).expect("edges follow one vertex order")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub k_max: usize,
    pub densities: Vec<f64>,
    pub budget: OracleBudget,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_max: 8,
            trials: 200,
            seed: 7,
            k_max: 3,
            densities: vec![0.1, 0.3, 0.5],
            budget: OracleBudget::default(),
        }
    }
}

/// Outcome of one `(instance, k)` check.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCase {
    pub trial: usize,
    pub n: usize,
    pub density: f64,
    pub report: GkReport,
    pub greedy_chain_coverage: usize,
    pub greedy_antichain_coverage: usize,
    /// Flow machinery contracts held: cancel bound, search bound, `|A_i| = |f_i|`.
    pub flow_contracts: bool,
}

impl SweepCase {
    /// `1 - (1 - 1/k)^k`, the max-coverage guarantee.
    pub fn greedy_bound(k: usize) -> f64 {
        1.0 - (1.0 - 1.0 / k as f64).powi(k as i32)
    }

    pub fn chain_ratio_ok(&self) -> bool {
        self.greedy_chain_coverage as f64 >= Self::greedy_bound(self.report.k) * self.report.brute_beta as f64 - 1e-9
    }

    pub fn antichain_ratio_ok(&self) -> bool {
        self.greedy_antichain_coverage as f64
            >= Self::greedy_bound(self.report.k) * self.report.brute_alpha as f64 - 1e-9
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub cases: Vec<SweepCase>,
    pub mismatches: Vec<String>,
}

impl SweepReport {
    pub fn instances(&self) -> usize {
        let mut trials: Vec<usize> = self.cases.iter().map(|c| c.trial).collect();
        trials.dedup();
        trials.len()
    }
}

/// Per-trial seed; trials are independent so the sweep shards freely.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn trial_instance(config: &SweepConfig, trial: usize) -> (Dag, f64) {
    let mut rng = trial_rng(config.seed, trial);
    let density = config.densities[trial % config.densities.len()];
    let n = rng.gen_range(1..=config.n_max);
    (random_dag(n, density, &mut rng), density)
}

fn run_case(dag: &Dag, k: usize, budget: OracleBudget) -> Result<(GkReport, usize, usize, bool), OracleError> {
    let report = verify_gk(dag, k, budget)?;
    let (chains, _) = greedy_k_chains(dag, k)?;
    let anti = greedy_k_antichains(dag, k)?;
    let sizes = anti.trace.rounds.iter().zip(&anti.stats.flow_values).all(|(r, &f)| r.gain as i64 == f);
    let a = solve_alpha(dag, k)?;
    let b = solve_beta(dag, k)?;
    let contracts =
        sizes && anti.stats.within_search_bound() && a.stats.within_cancel_bound() && b.stats.within_cancel_bound();
    Ok((report, chains.coverage(), anti.family.coverage(), contracts))
}

pub fn sweep(config: &SweepConfig) -> SweepReport {
    let results: Vec<Result<Vec<SweepCase>, String>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let (dag, density) = trial_instance(config, trial);
            (1..=config.k_max)
                .map(|k| {
                    run_case(&dag, k, config.budget)
                        .map(|(report, gc, ga, flow_contracts)| SweepCase {
                            trial,
                            n: dag.n(),
                            density,
                            report,
                            greedy_chain_coverage: gc,
                            greedy_antichain_coverage: ga,
                            flow_contracts,
                        })
                        .map_err(|e| format!("trial {trial}, k = {k}: {e}"))
                })
                .collect()
        })
        .collect();
    let mut report = SweepReport::default();
    for r in results {
        match r {
            Ok(cases) => report.cases.extend(cases),
            Err(e) => report.mismatches.push(e),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::tests::sample_dag;
    use crate::dag::{certify_antichain, certify_chain};

    fn path(n: usize) -> Dag {
        Dag::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn sample_dag_values() {
        let dag = sample_dag();
        let o = Oracle::new(&dag, OracleBudget::default()).unwrap();
        assert_eq!(o.alpha(1).unwrap().0, 5);
        assert_eq!(o.alpha(2).unwrap().0, 8);
        assert_eq!(o.beta(1).unwrap().0, 3);
        assert_eq!(o.beta(2).unwrap().0, 5);
        assert_eq!(o.min_knorm_chain_partition(2).unwrap().0, 8);
        assert_eq!(o.min_knorm_antichain_partition(2).unwrap().0, 5);
        for k in 1..=3 {
            verify_gk(&dag, k, OracleBudget::default()).unwrap();
        }
    }

    #[test]
    fn trivial_values() {
        let b = OracleBudget::default();
        assert_eq!(brute_alpha(&Dag::empty(6), 1, b).unwrap().0, 6);
        assert_eq!(brute_alpha(&path(4), 2, b).unwrap().0, 2);
        assert_eq!(brute_beta(&path(4), 1, b).unwrap().0, 4);
        assert_eq!(brute_min_knorm_chain_partition(&Dag::empty(3), 1, b).unwrap(), 3);
        assert_eq!(brute_min_knorm_chain_partition(&path(4), 2, b).unwrap(), 2);
        assert_eq!(brute_min_knorm_antichain_partition(&path(4), 1, b).unwrap(), 4);
        assert_eq!(brute_min_knorm_antichain_partition(&Dag::empty(5), 2, b).unwrap(), 2);
        let r = verify_gk(&Dag::empty(1), 1, b).unwrap();
        assert_eq!((r.brute_alpha, r.brute_beta, r.solve_alpha, r.solve_beta), (1, 1, 1, 1));
    }

    #[test]
    fn witnesses_certify() {
        let dag = sample_dag();
        let o = Oracle::new(&dag, OracleBudget::default()).unwrap();
        for k in 1..=4 {
            let (a, fam) = o.alpha(k).unwrap();
            assert_eq!(fam.coverage(), a);
            for m in fam.members() {
                certify_antichain(&dag, m.vertices()).unwrap();
            }
            let (_, fam) = o.beta(k).unwrap();
            for m in fam.members() {
                certify_chain(&dag, m.vertices()).unwrap();
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b = OracleBudget::default();
        assert!(matches!(brute_alpha(&Dag::empty(11), 1, b), Err(OracleError::BudgetExceeded(_))));
        assert!(matches!(brute_alpha(&Dag::empty(3), 5, b), Err(OracleError::BudgetExceeded(_))));
        assert_eq!(brute_alpha(&Dag::empty(3), 0, b).unwrap_err(), OracleError::ZeroK);
    }

    #[test]
    fn small_sweep_is_clean() {
        let config = SweepConfig { trials: 30, n_max: 7, ..SweepConfig::default() };
        let report = sweep(&config);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
        assert_eq!(report.cases.len(), 90);
        assert!(report.cases.iter().all(|c| c.chain_ratio_ok() && c.antichain_ratio_ok() && c.flow_contracts));
    }
}
