use super::objects::{CertError, Member};
use super::Vertex;

/// Certified members over the vertex set `0..n`.
///
/// Members are never empty. When `disjoint` is set no vertex lies in two
/// members; path collections may overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family<M> {
    n: usize,
    members: Vec<M>,
    disjoint: bool,
}

impl<M: Member> Family<M> {
    pub fn disjoint(n: usize, members: Vec<M>) -> Result<Self, CertError> {
        check_members(n, &members)?;
        if let Some(v) = first_overlap(n, &members) {
            return Err(CertError::Overlap(v));
        }
        Ok(Family { n, members, disjoint: true })
    }

    pub fn collection(n: usize, members: Vec<M>) -> Result<Self, CertError> {
        check_members(n, &members)?;
        let disjoint = first_overlap(n, &members).is_none();
        Ok(Family { n, members, disjoint })
    }

    pub fn empty(n: usize) -> Self {
        Family { n, members: Vec::new(), disjoint: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[M] {
        &self.members
    }

    pub fn into_members(self) -> Vec<M> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    pub fn covered(&self) -> Vec<bool> {
        let mut mark = vec![false; self.n];
        for m in &self.members {
            for &v in m.vertices() {
                mark[v] = true;
            }
        }
        mark
    }

    /// Number of distinct vertices in the union of the members.
    pub fn coverage(&self) -> usize {
        self.covered().into_iter().filter(|&c| c).count()
    }

    pub fn is_partition(&self) -> bool {
        self.disjoint && self.coverage() == self.n
    }

    /// `sum(min(|M|, k))`, defined only for partitions of the vertex set.
    pub fn knorm_partition(&self, k: usize) -> Result<usize, CertError> {
        if let Some(v) = first_overlap(self.n, &self.members) {
            return Err(CertError::Overlap(v));
        }
        if let Some(v) = self.covered().iter().position(|&c| !c) {
            return Err(CertError::NotPartition(v));
        }
        Ok(self.members.iter().map(|m| m.len().min(k)).sum())
    }

    /// `|V \ V(F)| + k |F|`.
    pub fn knorm_collection(&self, k: usize) -> usize {
        self.n - self.coverage() + k * self.members.len()
    }

    /// Adds a singleton for every uncovered vertex, in id order.
    pub fn partition_completion(&self) -> Result<Family<M>, CertError> {
        if let Some(v) = first_overlap(self.n, &self.members) {
            return Err(CertError::Overlap(v));
        }
        let mut members = self.members.clone();
        for (v, c) in self.covered().into_iter().enumerate() {
            if !c {
                members.push(M::singleton(v));
            }
        }
        Ok(Family { n: self.n, members, disjoint: true })
    }
}

fn check_members<M: Member>(n: usize, members: &[M]) -> Result<(), CertError> {
    for m in members {
        if m.is_empty() {
            return Err(CertError::EmptyMember);
        }
        for &v in m.vertices() {
            if v >= n {
                return Err(crate::dag::DagError::Index { vertex: v, n }.into());
            }
        }
    }
    Ok(())
}

fn first_overlap<M: Member>(n: usize, members: &[M]) -> Option<Vertex> {
    let mut seen = vec![false; n];
    for m in members {
        for &v in m.vertices() {
            if std::mem::replace(&mut seen[v], true) {
                return Some(v);
            }
        }
    }
    None
}
