use crate::dag::{certify_chain, Chain, Dag, Family, GraphPath, Member, Vertex};

use super::GkError;

#[derive(Debug, Clone)]
pub struct ChainExtraction {
    pub chains: Family<Chain>,
    /// Remnants that failed certification and had to be cut. Expected 0.
    pub splits: usize,
}

/// Disjoint chains from overlapping paths: a shared vertex stays in the
/// earliest path that visits it. Empty remnants are dropped.
pub fn chains_from_paths(dag: &Dag, paths: &[GraphPath]) -> Result<ChainExtraction, GkError> {
    let mut taken = vec![false; dag.n()];
    let mut chains = Vec::new();
    let mut splits = 0;
    for p in paths {
        let rest: Vec<Vertex> =
            p.vertices().iter().copied().filter(|&v| !std::mem::replace(&mut taken[v], true)).collect();
        let mut piece: Vec<Vertex> = Vec::new();
        for v in rest {
            if let Some(&last) = piece.last() {
                if !dag.reaches(last, v) {
                    splits += 1;
                    chains.push(certify_chain(dag, &std::mem::take(&mut piece))?);
                }
            }
            piece.push(v);
        }
        if !piece.is_empty() {
            chains.push(certify_chain(dag, &piece)?);
        }
    }
    Ok(ChainExtraction { chains: Family::disjoint(dag.n(), chains)?, splits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::certify_path;
    use crate::dag::tests::sample_dag;

    #[test]
    fn disjoint_paths_unchanged() {
        let dag = sample_dag();
        let paths = vec![certify_path(&dag, &[0, 4, 8]).unwrap(), certify_path(&dag, &[1, 6]).unwrap()];
        let out = chains_from_paths(&dag, &paths).unwrap();
        let got: Vec<_> = out.chains.members().iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 4, 8], vec![1, 6]]);
        assert_eq!(out.splits, 0);
    }

    #[test]
    fn shared_vertex_kept_by_first() {
        let dag = sample_dag();
        let paths = vec![certify_path(&dag, &[0, 4, 8]).unwrap(), certify_path(&dag, &[1, 4, 7]).unwrap()];
        let out = chains_from_paths(&dag, &paths).unwrap();
        assert_eq!(out.chains.members()[1].vertices(), &[1, 7]);
        assert_eq!(out.chains.coverage(), 5);
    }
}
