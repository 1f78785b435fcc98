//! Maximum-coverage chain and antichain problems on DAGs.
//!
//! The crate solves the Greene–Kleitman family of problems exactly through
//! two vertex-split flow networks (the *alpha* and *beta* networks) and
//! approximately through greedy set cover over chains and antichains.
//!
//! * [`dag`]: the graph type, reachability, certified chains/antichains and
//!   the k-norm calculus.
//! * [`flow`]: integer flow networks with lower bounds, cycle canceling,
//!   minimum flows and flow decomposition.
//! * [`gk`]: the alpha/beta networks and the exact solvers for MA-k, MC-k,
//!   MP-k, MCP-k, MAP-k, MAS-k and MPS-k.
//! * [`greedy`]: greedy chains, greedy antichains and their weighted cover
//!   variants.
//! * [`oracle`]: exponential-time ground truth for tiny instances.
//! * [`adversarial`]: instance families on which greedy is provably far from
//!   optimal.

pub mod adversarial;
pub mod dag;
pub mod flow;
pub mod gk;
pub mod greedy;
pub mod oracle;

pub use dag::{
    certify_antichain, certify_chain, certify_path, Antichain, CertError, Chain, Dag, DagError, Family, GraphPath,
    Member, Vertex,
};
pub use gk::{solve_alpha, solve_beta, GkError, GkSolution, Problem};
