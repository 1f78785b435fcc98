mod format;
mod report;

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use gkcover::adversarial::{AdversarialInstance, Expected, InstanceFamily};
use gkcover::gk::{solve, SolutionFamily, WarmStart};
use gkcover::greedy::{
    greedy_antichain_cover, greedy_k_antichains, greedy_k_chains, greedy_weighted_chain_cover, GreedyError, GreedyTrace,
};
use gkcover::oracle::{sweep, Oracle, OracleBudget, OracleError, SweepConfig};
use gkcover::{
    certify_antichain, certify_chain, certify_path, solve_alpha, solve_beta, Family, GkError, Member, Problem,
};
use serde_json::json;

use format::{parse_dag, serialize, DagFile};
use report::RunReport;

const BUDGET_ENV: &str = "GKCOVER_BUDGET_N";

#[derive(Parser)]
#[command(name = "gkcover", version, about = "Chain and antichain covers of DAGs, exact and greedy")]
struct Cli {
    /// Print the report as one JSON document.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one of the seven problems exactly through its flow network.
    Solve {
        #[arg(value_parser = parse_problem)]
        problem: Problem,
        #[arg(long)]
        k: usize,
        /// Start cycle canceling from greedy paths instead of the zero circulation.
        #[arg(long)]
        warm: bool,
        /// Also compare the value with the brute-force oracle when the graph is small enough.
        #[arg(long)]
        check: bool,
        /// DAG file, `-` for standard input.
        file: PathBuf,
    },
    /// Run a greedy heuristic.
    Greedy {
        mode: GreedyMode,
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
    /// Generate an instance on which greedy is provably bad.
    Gen {
        family: GenFamily,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        /// Run greedy and the exact solver and compare with the expected values.
        #[arg(long)]
        check: bool,
        /// Write the instance here; otherwise it goes to standard output and the report to standard error.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force ground truth for small graphs.
    Oracle {
        quantity: OracleQuantity,
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
    /// Compare solvers, oracle and greedy bounds on random DAGs.
    Verify {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GreedyMode {
    Chains,
    Antichains,
    ChainCover,
    AntichainCover,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    ChainRatio,
    AntichainRatio,
    Gc,
    Ga,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuantity {
    Alpha,
    Beta,
    ChainPartition,
    AntichainPartition,
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse::<Problem>().map_err(|e| e.to_string())
}

/// Input errors exit with 1, failed certification with 2.
enum Failure {
    Input(anyhow::Error),
    Mismatch(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<GkError> for Failure {
    fn from(e: GkError) -> Self {
        match e {
            GkError::ZeroK | GkError::Greedy(GreedyError::ZeroK) => Failure::Input(e.into()),
            e => Failure::Mismatch(e.into()),
        }
    }
}

impl From<GreedyError> for Failure {
    fn from(e: GreedyError) -> Self {
        GkError::from(e).into()
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Solver(e) => e.into(),
            OracleError::Greedy(e) => e.into(),
            e @ OracleError::Mismatch(_) => Failure::Mismatch(e.into()),
            e => Failure::Input(e.into()),
        }
    }
}

struct Output {
    report: RunReport,
    /// Generated instance to print on standard output.
    instance: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let text = if cli.json { out.report.to_json() + "\n" } else { out.report.to_table() };
            match out.instance {
                Some(instance) => {
                    print!("{instance}");
                    eprint!("{text}");
                }
                None => print!("{text}"),
            }
            if out.report.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(e)) => {
            eprintln!("mismatch: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    let report = match command {
        Command::Solve { problem, k, warm, check, file } => run_solve(problem, k, warm, check, &file)?,
        Command::Greedy { mode, k, file } => run_greedy(mode, k, &file)?,
        Command::Oracle { quantity, k, file } => run_oracle(quantity, k, &file)?,
        Command::Verify { n, trials, seed, kmax } => run_verify(n, trials, seed, kmax)?,
        Command::Gen { family, k, i, check, output } => return run_gen(family, k.or(i), check, output.as_deref()),
    };
    Ok(Output { report, instance: None })
}

fn load(path: &Path, report: &mut RunReport) -> anyhow::Result<DagFile> {
    let text = report.time("parse", || -> anyhow::Result<String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        }
    })?;
    let file = report.time("parse", || parse_dag(&text)).with_context(|| format!("parsing {}", path.display()))?;
    report.n = file.dag.n();
    Ok(file)
}

fn budget() -> anyhow::Result<OracleBudget> {
    let mut b = OracleBudget::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        let n: usize = v.trim().parse().with_context(|| format!("{BUDGET_ENV}={v:?} is not a vertex count"))?;
        b.max_n = n;
        b.max_steps = b.max_steps.max(3u64.saturating_pow(n as u32));
    }
    Ok(b)
}

#[derive(Clone, Copy)]
enum Kind {
    Chains,
    Antichains,
    Paths,
}

/// Reloads emitted names as ids and certifies every member again.
fn recertify(report: &mut RunReport, file: &DagFile, kind: Kind) {
    let Some(lists) = file.id_lists(&report.family) else {
        return report.fail("family names do not map back to vertices");
    };
    for m in &lists {
        let r = match kind {
            Kind::Chains => certify_chain(&file.dag, m).map(drop),
            Kind::Antichains => certify_antichain(&file.dag, m).map(drop),
            Kind::Paths => certify_path(&file.dag, m).map(drop),
        };
        if let Err(e) = r {
            report.fail(format!("member {:?}: {e}", report.family[lists.iter().position(|x| x == m).unwrap()]));
        }
    }
}

fn kind_of(family: &SolutionFamily) -> Kind {
    match family {
        SolutionFamily::Antichains(_) => Kind::Antichains,
        SolutionFamily::Chains(_) => Kind::Chains,
        SolutionFamily::Paths(_) => Kind::Paths,
    }
}

fn run_solve(problem: Problem, k: usize, warm: bool, check: bool, path: &Path) -> Result<RunReport, Failure> {
    let mut report = RunReport::new("solve", problem.name(), 0);
    report.k = Some(k);
    let file = load(path, &mut report)?;
    let warm = if warm { WarmStart::Greedy } else { WarmStart::Zero };
    let (sol, stats) = report.time("solve", || solve(&file.dag, problem, k, warm))?;
    report.value = Some(sol.value);
    report.family = file.name_lists(&sol.family.vertex_lists());
    let synthetic: Vec<usize> = (0..sol.synthetic.len()).filter(|&i| sol.synthetic[i]).collect();
    if !synthetic.is_empty() {
        report.detail("synthetic_members", synthetic.iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    report.count("cancellations", stats.cancellations);
    report.count("initial_cost", stats.initial_cost);
    report.count("final_cost", stats.final_cost);
    report.count("flow_paths", stats.paths);
    report.count("chain_splits", stats.chain_splits);
    report.require(stats.within_cancel_bound(), || "cycle canceling exceeded the cost gap".into());
    if stats.degenerate {
        report.detail("degenerate", true);
    }
    let start = Instant::now();
    if let Err(e) = sol.verify(&file.dag) {
        report.fail(e.to_string());
    }
    recertify(&mut report, &file, kind_of(&sol.family));
    report.record("certify", start);
    if check {
        let b = budget()?;
        if file.dag.n() > b.max_n || k > b.max_k {
            report.detail("oracle", format!("skipped: n = {} or k = {k} beyond budget", file.dag.n()));
        } else {
            let oracle = Oracle::new(&file.dag, b).map_err(Failure::from)?;
            let want = report.time("oracle", || match problem.kind() {
                gkcover::gk::NetworkKind::Alpha => oracle.alpha(k).map(|r| r.0),
                gkcover::gk::NetworkKind::Beta => oracle.beta(k).map(|r| r.0),
            })?;
            report.detail("oracle", want);
            report.require(want == sol.value, || format!("oracle value {want} differs from {}", sol.value));
        }
    }
    Ok(report)
}

fn trace_details(report: &mut RunReport, trace: &GreedyTrace) {
    report.detail("gains", trace.gains());
    report.detail("stop", format!("{:?}", trace.stop));
    report.count("greedy_rounds", trace.rounds.len());
    report.require(trace.gains_non_increasing(), || "greedy gains increased".into());
}

fn set_family<M: Member>(report: &mut RunReport, file: &DagFile, family: &Family<M>) {
    let lists: Vec<Vec<usize>> = family.members().iter().map(|m| m.vertices().to_vec()).collect();
    report.family = file.name_lists(&lists);
}

fn run_greedy(mode: GreedyMode, k: usize, path: &Path) -> Result<RunReport, Failure> {
    let name = match mode {
        GreedyMode::Chains => "chains",
        GreedyMode::Antichains => "antichains",
        GreedyMode::ChainCover => "chain-cover",
        GreedyMode::AntichainCover => "antichain-cover",
    };
    let mut report = RunReport::new("greedy", name, 0);
    report.k = Some(k);
    let file = load(path, &mut report)?;
    let dag = &file.dag;
    let kind = match mode {
        GreedyMode::Chains => {
            let (family, trace) = report.time("greedy", || greedy_k_chains(dag, k))?;
            report.value = Some(family.coverage());
            set_family(&mut report, &file, &family);
            trace_details(&mut report, &trace);
            report.require(family.coverage() == trace.coverage(), || "coverage differs from the trace".into());
            Kind::Chains
        }
        GreedyMode::Antichains => {
            let g = report.time("greedy", || greedy_k_antichains(dag, k))?;
            report.value = Some(g.family.coverage());
            set_family(&mut report, &file, &g.family);
            trace_details(&mut report, &g.trace);
            antichain_counters(&mut report, &g.stats, &g.trace);
            Kind::Antichains
        }
        GreedyMode::ChainCover => {
            let c = report.time("greedy", || greedy_weighted_chain_cover(dag, k))?;
            let norm = c.partition.knorm_partition(k).map_err(|e| Failure::Mismatch(e.into()))?;
            report.value = Some(norm);
            set_family(&mut report, &file, &c.partition);
            trace_details(&mut report, &c.trace);
            report.require(c.partition.is_partition(), || "chains do not partition the vertices".into());
            Kind::Chains
        }
        GreedyMode::AntichainCover => {
            let c = report.time("greedy", || greedy_antichain_cover(dag, k))?;
            let norm = c.partition.knorm_partition(k).map_err(|e| Failure::Mismatch(e.into()))?;
            report.value = Some(norm);
            set_family(&mut report, &file, &c.partition);
            trace_details(&mut report, &c.trace);
            antichain_counters(&mut report, &c.stats, &c.trace);
            report.require(c.partition.is_partition(), || "antichains do not partition the vertices".into());
            Kind::Antichains
        }
    };
    let start = Instant::now();
    recertify(&mut report, &file, kind);
    report.record("certify", start);
    Ok(report)
}

fn antichain_counters(report: &mut RunReport, stats: &gkcover::greedy::AntichainStats, trace: &GreedyTrace) {
    report.count("decrementing_paths", stats.decrements);
    report.count("warm_searches", stats.warm_searches);
    report.count("probes", stats.probes);
    report.require(stats.within_search_bound(), || "decrementing-path searches exceed their bound".into());
    let sizes = trace.rounds.iter().zip(&stats.flow_values).all(|(r, &f)| r.gain as i64 == f);
    report.require(sizes, || "an antichain size differs from its flow value".into());
}

fn run_oracle(quantity: OracleQuantity, k: usize, path: &Path) -> Result<RunReport, Failure> {
    let name = match quantity {
        OracleQuantity::Alpha => "alpha",
        OracleQuantity::Beta => "beta",
        OracleQuantity::ChainPartition => "chain-partition",
        OracleQuantity::AntichainPartition => "antichain-partition",
    };
    let mut report = RunReport::new("oracle", name, 0);
    report.k = Some(k);
    let file = load(path, &mut report)?;
    let dag = &file.dag;
    let oracle = Oracle::new(dag, budget()?)?;
    let (value, lists, kind) = report.time("oracle", || -> Result<_, OracleError> {
        Ok(match quantity {
            OracleQuantity::Alpha => {
                let (v, f) = oracle.alpha(k)?;
                (v, f.members().iter().map(|m| m.vertices().to_vec()).collect::<Vec<_>>(), Kind::Antichains)
            }
            OracleQuantity::Beta => {
                let (v, f) = oracle.beta(k)?;
                (v, f.members().iter().map(|m| m.vertices().to_vec()).collect(), Kind::Chains)
            }
            OracleQuantity::ChainPartition => {
                let (v, f) = oracle.min_knorm_chain_partition(k)?;
                (v, f.members().iter().map(|m| m.vertices().to_vec()).collect(), Kind::Chains)
            }
            OracleQuantity::AntichainPartition => {
                let (v, f) = oracle.min_knorm_antichain_partition(k)?;
                (v, f.members().iter().map(|m| m.vertices().to_vec()).collect(), Kind::Antichains)
            }
        })
    })?;
    report.value = Some(value);
    report.family = file.name_lists(&lists);
    let solver = report.time("solve", || -> Result<usize, GkError> {
        Ok(match quantity {
            OracleQuantity::Alpha | OracleQuantity::ChainPartition => solve_alpha(dag, k)?.alpha,
            OracleQuantity::Beta | OracleQuantity::AntichainPartition => solve_beta(dag, k)?.beta,
        })
    })?;
    report.detail("solver", solver);
    report.require(solver == value, || format!("solver value {solver} differs from {value}"));
    recertify(&mut report, &file, kind);
    Ok(report)
}

fn run_verify(n: usize, trials: usize, seed: u64, kmax: usize) -> Result<RunReport, Failure> {
    let mut budget = budget()?;
    if n == 0 || kmax == 0 {
        return Err(Failure::Input(anyhow!("--n and --kmax must be positive")));
    }
    if n > budget.max_n {
        return Err(Failure::Input(anyhow!("--n {n} exceeds the oracle budget {} (set {BUDGET_ENV})", budget.max_n)));
    }
    budget.max_k = budget.max_k.max(kmax);
    let config = SweepConfig { n_max: n, trials, seed, k_max: kmax, budget, ..SweepConfig::default() };
    let mut report = RunReport::new("verify", "sweep", n);
    report.k = Some(kmax);
    report.detail("densities", &config.densities);
    report.detail("seed", seed);
    let result = report.time("sweep", || sweep(&config));
    let chain = result.cases.iter().filter(|c| !c.chain_ratio_ok()).count();
    let anti = result.cases.iter().filter(|c| !c.antichain_ratio_ok()).count();
    let contracts = result.cases.iter().filter(|c| !c.flow_contracts).count();
    report.count("instances", result.instances());
    report.count("cases", result.cases.len());
    report.count("mismatches", result.mismatches.len());
    report.count("chain_ratio_violations", chain);
    report.count("antichain_ratio_violations", anti);
    report.count("contract_violations", contracts);
    for m in result.mismatches.iter().take(10) {
        report.fail(m.clone());
    }
    report.require(chain + anti == 0, || "greedy fell below its approximation bound".into());
    report.require(contracts == 0, || "flow machinery contract violated".into());
    Ok(report)
}

fn expected_json(e: &Expected) -> serde_json::Value {
    json!({
        "optimal_value": e.optimal_value,
        "greedy_value": e.greedy_value,
        "optimal_members": e.optimal_members,
        "greedy_members": e.greedy_members,
    })
}

fn run_gen(family: GenFamily, param: Option<usize>, check: bool, output: Option<&Path>) -> Result<Output, Failure> {
    let Some(p) = param else {
        return Err(Failure::Input(anyhow!("give the instance parameter with --k or --i")));
    };
    let tag = match family {
        GenFamily::ChainRatio => InstanceFamily::ChainRatio(p),
        GenFamily::AntichainRatio => InstanceFamily::AntichainRatio(p),
        GenFamily::Gc => InstanceFamily::GreedyPathLower(p),
        GenFamily::Ga => InstanceFamily::GreedyAntichainLower(p),
    };
    let mut report = RunReport::new("gen", tag.to_string(), 0);
    let inst: AdversarialInstance = report.time("generate", || tag.generate()).map_err(|e| Failure::Input(e.into()))?;
    report.n = inst.dag.n();
    report.count("edges", inst.dag.edge_count());
    report.detail("expected", expected_json(&inst.expected));
    let groups: serde_json::Map<String, serde_json::Value> = inst
        .groups
        .iter()
        .map(|g| (g.label.clone(), json!(g.vertices.iter().map(|&v| &inst.names[v]).collect::<Vec<_>>())))
        .collect();
    report.detail("groups", groups);
    let file = DagFile::new(inst.names.clone(), inst.dag.clone());
    let text = serialize(&file);
    let start = Instant::now();
    match parse_dag(&text) {
        Ok(back) => report.require(back.dag.edges() == inst.dag.edges() && back.names == inst.names, || {
            "instance does not survive a round trip".into()
        }),
        Err(e) => report.fail(format!("instance does not parse back: {e}")),
    }
    report.record("certify", start);
    if check {
        let seen = report.time("check", || inst.observe())?;
        report.detail("observed", expected_json(&seen));
        report.require(seen == inst.expected, || format!("observed {seen:?}, expected {:?}", inst.expected));
    }
    match output {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Output { report, instance: None })
        }
        None => Ok(Output { report, instance: Some(text) }),
    }
}
