use thiserror::Error;

use super::{Dag, DagError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error(transparent)]
    Index(#[from] DagError),
    #[error("vertex {0} appears twice")]
    Duplicate(Vertex),
    #[error("{to} is not reachable from {from}")]
    NotChain { from: Vertex, to: Vertex },
    #[error("({from}, {to}) is not an edge")]
    NotPath { from: Vertex, to: Vertex },
    #[error("{u} reaches {v}, so they cannot share an antichain")]
    NotAntichain { u: Vertex, v: Vertex },
    #[error("vertex {0} lies in two members of a disjoint family")]
    Overlap(Vertex),
    #[error("family members must be non-empty")]
    EmptyMember,
    #[error("vertex {0} is not covered, so the family is not a partition")]
    NotPartition(Vertex),
}

/// A certified vertex collection that can sit in a [`super::Family`].
pub trait Member: Clone + std::fmt::Debug {
    fn vertices(&self) -> &[Vertex];

    /// The one-vertex member, valid in every DAG.
    fn singleton(v: Vertex) -> Self;

    fn len(&self) -> usize {
        self.vertices().len()
    }

    fn is_empty(&self) -> bool {
        self.vertices().is_empty()
    }

    fn contains(&self, v: Vertex) -> bool {
        self.vertices().contains(&v)
    }
}

macro_rules! member {
    ($name:ident) => {
        impl Member for $name {
            fn vertices(&self) -> &[Vertex] {
                &self.0
            }

            fn singleton(v: Vertex) -> Self {
                $name(vec![v])
            }
        }

        impl $name {
            pub fn into_vec(self) -> Vec<Vertex> {
                self.0
            }

            /// Wraps vertices the caller has already certified.
            pub(crate) fn trusted(vertices: Vec<Vertex>) -> Self {
                $name(vertices)
            }
        }
    };
}

/// Vertices in topological order, each reaching the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain(Vec<Vertex>);

/// Vertices joined by consecutive edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphPath(Vec<Vertex>);

/// Pairwise unreachable vertices, sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Antichain(Vec<Vertex>);

member!(Chain);
member!(GraphPath);
member!(Antichain);

fn check_distinct(dag: &Dag, seq: &[Vertex]) -> Result<(), CertError> {
    let mut seen = vec![false; dag.n()];
    for &v in seq {
        dag.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(CertError::Duplicate(v));
        }
    }
    Ok(())
}

pub fn certify_chain(dag: &Dag, seq: &[Vertex]) -> Result<Chain, CertError> {
    check_distinct(dag, seq)?;
    for w in seq.windows(2) {
        if !dag.reaches(w[0], w[1]) {
            return Err(CertError::NotChain { from: w[0], to: w[1] });
        }
    }
    Ok(Chain(seq.to_vec()))
}

pub fn certify_path(dag: &Dag, seq: &[Vertex]) -> Result<GraphPath, CertError> {
    check_distinct(dag, seq)?;
    for w in seq.windows(2) {
        if !dag.has_edge(w[0], w[1]) {
            return Err(CertError::NotPath { from: w[0], to: w[1] });
        }
    }
    Ok(GraphPath(seq.to_vec()))
}

/// Linear-time check: one topological sweep carries, for every vertex, some
/// member that reaches it by a non-empty path.
pub fn certify_antichain(dag: &Dag, set: &[Vertex]) -> Result<Antichain, CertError> {
    check_distinct(dag, set)?;
    let mut member = vec![false; dag.n()];
    for &v in set {
        member[v] = true;
    }
    let mut reached_by: Vec<Option<Vertex>> = vec![None; dag.n()];
    for &w in dag.topo_order() {
        let mut witness = None;
        for &p in dag.predecessors(w) {
            let from = if member[p] { Some(p) } else { reached_by[p] };
            if from.is_some() {
                witness = from;
                break;
            }
        }
        if member[w] {
            if let Some(u) = witness {
                return Err(CertError::NotAntichain { u, v: w });
            }
        }
        reached_by[w] = witness;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    Ok(Antichain(sorted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::tests::sample_dag;

    fn pairwise_oracle(dag: &Dag, set: &[Vertex]) -> bool {
        set.iter().all(|&u| set.iter().all(|&v| u == v || !dag.reachable(u, v).unwrap()))
    }

    #[test]
    fn antichain_examples() {
        let dag = sample_dag();
        assert_eq!(certify_antichain(&dag, &[3, 1, 0, 2]).unwrap().vertices(), &[0, 1, 2, 3]);
        assert!(certify_antichain(&dag, &[4]).is_ok());
        assert_eq!(certify_antichain(&dag, &[0, 4]), Err(CertError::NotAntichain { u: 0, v: 4 }));
        assert_eq!(certify_antichain(&dag, &[1, 1]), Err(CertError::Duplicate(1)));
    }

    #[test]
    fn chain_examples() {
        let dag = sample_dag();
        assert!(certify_chain(&dag, &[0, 4, 8]).is_ok());
        assert!(certify_chain(&dag, &[]).unwrap().is_empty());
        assert_eq!(certify_chain(&dag, &[2, 3]), Err(CertError::NotChain { from: 2, to: 3 }));
        // Chains may skip; paths may not.
        let dag = Dag::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(certify_chain(&dag, &[0, 2]).is_ok());
        assert_eq!(certify_path(&dag, &[0, 2]), Err(CertError::NotPath { from: 0, to: 2 }));
        assert!(certify_path(&dag, &[0, 1, 2]).is_ok());
    }

    #[test]
    fn antichain_matches_pairwise_check() {
        let dag = sample_dag();
        for mask in 0u32..(1 << 9) {
            let set: Vec<_> = (0..9).filter(|&v| mask >> v & 1 == 1).collect();
            assert_eq!(certify_antichain(&dag, &set).is_ok(), pairwise_oracle(&dag, &set), "{set:?}");
        }
    }
}
