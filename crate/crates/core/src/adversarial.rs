//! Instance families on which the greedy heuristics are provably far from optimal.
//!
//! Vertex ids are chosen so that the deterministic tie-breaking of the greedy
//! routines (smallest ids first) takes exactly the adversarial choices. Every
//! instance carries vertex names and labelled vertex groups for reporting.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::dag::{Dag, Member, Vertex};
use crate::gk::{solve, GkError, Problem, WarmStart};
use crate::greedy::{
    count_optimal_paths, greedy_antichain_cover, greedy_chain_partition, greedy_k_antichains, greedy_k_chains,
    max_coverage_path, UncoveredSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceFamily {
    ChainRatio(usize),
    AntichainRatio(usize),
    GreedyPathLower(usize),
    GreedyAntichainLower(usize),
}

impl InstanceFamily {
    pub fn parameter(&self) -> usize {
        match *self {
            InstanceFamily::ChainRatio(p)
            | InstanceFamily::AntichainRatio(p)
            | InstanceFamily::GreedyPathLower(p)
            | InstanceFamily::GreedyAntichainLower(p) => p,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InstanceFamily::ChainRatio(_) => "chain-ratio",
            InstanceFamily::AntichainRatio(_) => "antichain-ratio",
            InstanceFamily::GreedyPathLower(_) => "gc",
            InstanceFamily::GreedyAntichainLower(_) => "ga",
        }
    }

    fn minimum(&self) -> usize {
        match self {
            InstanceFamily::ChainRatio(_) | InstanceFamily::AntichainRatio(_) => 2,
            _ => 1,
        }
    }

    /// Builds the instance for this tag.
    pub fn generate(&self) -> Result<AdversarialInstance, DomainError> {
        match *self {
            InstanceFamily::ChainRatio(k) => gen_chain_ratio(k),
            InstanceFamily::AntichainRatio(k) => gen_antichain_ratio(k),
            InstanceFamily::GreedyPathLower(i) => gen_gc(i),
            InstanceFamily::GreedyAntichainLower(i) => gen_ga(i),
        }
    }
}

impl fmt::Display for InstanceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.parameter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{family} needs a parameter of at least {min}")]
pub struct DomainError {
    pub family: InstanceFamily,
    pub min: usize,
}

/// For the ratio families values are covered vertices with `k` members; for
/// the lower-bound families they are partition sizes (the 1-norm).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub optimal_value: usize,
    pub greedy_value: usize,
    pub optimal_members: usize,
    pub greedy_members: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub label: String,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone)]
pub struct AdversarialInstance {
    pub dag: Dag,
    pub family: InstanceFamily,
    pub expected: Expected,
    pub names: Vec<String>,
    pub groups: Vec<Group>,
}

impl AdversarialInstance {
    pub fn group(&self, label: &str) -> Option<&[Vertex]> {
        self.groups.iter().find(|g| g.label == label).map(|g| g.vertices.as_slice())
    }

    /// Runs greedy and the exact solver, returning what they actually achieve.
    pub fn observe(&self) -> Result<Expected, GkError> {
        let dag = &self.dag;
        Ok(match self.family {
            InstanceFamily::ChainRatio(k) => {
                let (greedy, _) = greedy_k_chains(dag, k)?;
                let (opt, _) = solve(dag, Problem::McK, k, WarmStart::Zero)?;
                Expected {
                    optimal_value: opt.value,
                    greedy_value: greedy.coverage(),
                    optimal_members: opt.family.len(),
                    greedy_members: greedy.len(),
                }
            }
            InstanceFamily::AntichainRatio(k) => {
                let greedy = greedy_k_antichains(dag, k)?;
                let (opt, _) = solve(dag, Problem::MaK, k, WarmStart::Greedy)?;
                Expected {
                    optimal_value: opt.value,
                    greedy_value: greedy.family.coverage(),
                    optimal_members: opt.family.len(),
                    greedy_members: greedy.family.len(),
                }
            }
            InstanceFamily::GreedyPathLower(_) => {
                let (paths, _) = greedy_chain_partition(dag);
                let (opt, _) = solve(dag, Problem::McpK, 1, WarmStart::Greedy)?;
                Expected {
                    optimal_value: opt.value,
                    greedy_value: paths.len(),
                    optimal_members: opt.family.len(),
                    greedy_members: paths.len(),
                }
            }
            InstanceFamily::GreedyAntichainLower(_) => {
                let cover = greedy_antichain_cover(dag, 1)?;
                let (opt, _) = solve(dag, Problem::MapK, 1, WarmStart::Zero)?;
                Expected {
                    optimal_value: opt.value,
                    greedy_value: cover.partition.len(),
                    optimal_members: opt.family.len(),
                    greedy_members: cover.partition.len(),
                }
            }
        })
    }
}

/// Named vertices and edges, assembled block by block.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    edges: Vec<(Vertex, Vertex)>,
    groups: Vec<Group>,
}

impl Builder {
    fn vertex(&mut self, name: String) -> Vertex {
        let id = self.names.len();
        assert!(self.index.insert(name.clone(), id).is_none(), "duplicate vertex {name}");
        self.names.push(name);
        id
    }

    fn id(&self, name: &str) -> Vertex {
        self.index[name]
    }

    fn edge(&mut self, u: &str, v: &str) {
        self.edges.push((self.id(u), self.id(v)));
    }

    fn group(&mut self, label: String, names: &[String]) {
        let vertices = names.iter().map(|n| self.id(n)).collect();
        self.groups.push(Group { label, vertices });
    }

    fn finish(self, family: InstanceFamily, expected: Expected) -> AdversarialInstance {
        let dag = Dag::new(self.names.len(), self.edges).expect("generated instances are acyclic");
        AdversarialInstance { dag, family, expected, names: self.names, groups: self.groups }
    }
}

fn row(prefix: &str, letter: char, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|j| format!("{prefix}{letter}{j}")).collect()
}

/// One building block: vertex names in id order, colour classes, extra edges.
struct Block {
    order: Vec<String>,
    classes: Vec<(&'static str, Vec<String>)>,
    edges: Vec<(String, String)>,
}

fn add_block(b: &mut Builder, block: Block, copy: usize) -> Vec<Vertex> {
    let ids: Vec<Vertex> = block.order.iter().map(|n| b.vertex(n.clone())).collect();
    for (u, v) in &block.edges {
        b.edge(u, v);
    }
    for (label, members) in &block.classes {
        b.group(format!("{label}{copy}"), members);
    }
    ids
}

fn named(p: &str, names: &[&str]) -> Vec<String> {
    names.iter().map(|n| format!("{p}{n}")).collect()
}

fn row_edges(p: &str, letters: &str, len: usize) -> Vec<(String, String)> {
    letters.chars().flat_map(|c| (1..len).map(move |j| (format!("{p}{c}{j}"), format!("{p}{c}{}", j + 1)))).collect()
}

fn pairs(p: &str, list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter().map(|(u, v)| (format!("{p}{u}"), format!("{p}{v}"))).collect()
}

/// Two 8-vertex rows and the edge `A4 -> B5`. Greedy takes `A1..A4 B5..B8`,
/// then one 4-vertex half-row.
fn chain_g2(p: &str) -> Block {
    let blue = [row(p, 'A', 1..=4), row(p, 'B', 5..=8)].concat();
    let red = row(p, 'A', 5..=8);
    let order = [blue.clone(), red.clone(), row(p, 'B', 1..=4)].concat();
    let mut edges = row_edges(p, "AB", 8);
    edges.extend(pairs(p, &[("A4", "B5")]));
    Block { order, classes: vec![("blue", blue), ("red", red)], edges }
}

/// Three 9-vertex rows; greedy covers 9, 6 and 4 of the 27 vertices.
fn chain_g3(p: &str) -> Block {
    let blue = named(p, &["A1", "A2", "A3", "B4", "B5", "B6", "C7", "C8", "C9"]);
    let red = named(p, &["B1", "B2", "C3", "C4", "A8", "A9"]);
    let yellow = row(p, 'A', 4..=7);
    let rest = named(p, &["B3", "B7", "B8", "B9", "C1", "C2", "C5", "C6"]);
    let order = [blue.clone(), red.clone(), yellow.clone(), rest].concat();
    let mut edges = row_edges(p, "ABC", 9);
    edges.extend(pairs(p, &[("A3", "B4"), ("B2", "C3"), ("B6", "C7"), ("C4", "A8")]));
    Block { order, classes: vec![("blue", blue), ("red", red), ("yellow", yellow)], edges }
}

/// Rows `x1..x8`, `y1..y8`; edges `x_j -> y_j` and `x_j -> y_{j-4}` for `j > 4`.
fn antichain_g2(p: &str) -> Block {
    let blue = [row(p, 'x', 1..=4), row(p, 'y', 5..=8)].concat();
    let red = row(p, 'x', 5..=8);
    let order = [blue.clone(), red.clone(), row(p, 'y', 1..=4)].concat();
    let mut edges: Vec<(String, String)> = (1..=8).map(|j| (format!("{p}x{j}"), format!("{p}y{j}"))).collect();
    edges.extend((5..=8).map(|j| (format!("{p}x{j}"), format!("{p}y{}", j - 4))));
    Block { order, classes: vec![("blue", blue), ("red", red)], edges }
}

/// Three levels `A`, `B`, `C` of 9 vertices; greedy antichains of sizes 9, 6, 4.
fn antichain_g3(p: &str) -> Block {
    let blue = named(p, &["A1", "A2", "A3", "B4", "B5", "B6", "C7", "C8", "C9"]);
    let red = named(p, &["C1", "C2", "B3", "B7", "A8", "A9"]);
    let yellow = row(p, 'A', 4..=7);
    let rest = named(p, &["B1", "B2", "B8", "B9", "C3", "C4", "C5", "C6"]);
    let order = [blue.clone(), red.clone(), yellow.clone(), rest].concat();
    let mut edges: Vec<(String, String)> = Vec::new();
    for j in 1..=9 {
        edges.push((format!("{p}A{j}"), format!("{p}B{j}")));
        edges.push((format!("{p}B{j}"), format!("{p}C{j}")));
    }
    edges.extend(pairs(
        p,
        &[
            ("A4", "B1"),
            ("A5", "B2"),
            ("A6", "B3"),
            ("A6", "B8"),
            ("A7", "B9"),
            ("B1", "C3"),
            ("B2", "C4"),
            ("B7", "C4"),
            ("B8", "C5"),
            ("B9", "C6"),
        ],
    ));
    Block { order, classes: vec![("blue", blue), ("red", red), ("yellow", yellow)], edges }
}

/// Number of `G2` copies and whether a `G3` is added: `k = 2c` or `k = 2c + 3`.
fn ratio_blocks(k: usize) -> (usize, bool) {
    if k.is_multiple_of(2) {
        (k / 2, false)
    } else {
        ((k - 3) / 2, true)
    }
}

fn ratio_expected(k: usize) -> Expected {
    let (copies, odd) = ratio_blocks(k);
    Expected {
        optimal_value: 16 * copies + if odd { 27 } else { 0 },
        greedy_value: 12 * copies + if odd { 19 } else { 0 },
        optimal_members: k,
        greedy_members: k,
    }
}

fn blocks(k: usize, g2: fn(&str) -> Block, g3: fn(&str) -> Block) -> Vec<Block> {
    let (copies, odd) = ratio_blocks(k);
    let single = copies + odd as usize == 1;
    let prefix = |c: usize| if single { String::new() } else { format!("g{c}.") };
    let mut out: Vec<Block> = (1..=copies).map(|c| g2(&prefix(c))).collect();
    if odd {
        out.push(g3(&prefix(copies + 1)));
    }
    out
}

/// Disjoint copies of the chain gadgets; greedy covers at most 3/4 of `beta_k`.
pub fn gen_chain_ratio(k: usize) -> Result<AdversarialInstance, DomainError> {
    let family = InstanceFamily::ChainRatio(k);
    check_domain(family, k)?;
    let mut b = Builder::default();
    for (c, block) in blocks(k, chain_g2, chain_g3).into_iter().enumerate() {
        add_block(&mut b, block, c + 1);
    }
    Ok(b.finish(family, ratio_expected(k)))
}

/// Antichain gadgets in series: every vertex of one copy precedes every vertex of the next.
pub fn gen_antichain_ratio(k: usize) -> Result<AdversarialInstance, DomainError> {
    let family = InstanceFamily::AntichainRatio(k);
    check_domain(family, k)?;
    let mut b = Builder::default();
    let mut previous: Vec<Vertex> = Vec::new();
    for (c, block) in blocks(k, antichain_g2, antichain_g3).into_iter().enumerate() {
        let ids = add_block(&mut b, block, c + 1);
        for &u in &previous {
            for &v in &ids {
                b.edges.push((u, v));
            }
        }
        previous = ids;
    }
    Ok(b.finish(family, ratio_expected(k)))
}

fn binomial(m: usize, j: usize) -> usize {
    (0..j).fold(1, |acc, t| acc * (m - t) / (t + 1))
}

/// Alternating paths `P_1..P_i`, segment `P_m[j]` a path of `C(m, j)` vertices,
/// so `|P_m| = 2^m - 1`. Greedy peels `P_i, ..., P_1` while two paths suffice.
pub fn gen_gc(i: usize) -> Result<AdversarialInstance, DomainError> {
    let family = InstanceFamily::GreedyPathLower(i);
    check_domain(family, i)?;
    let mut b = Builder::default();
    // first and last vertex of each segment
    let mut seg: HashMap<(usize, usize), (Vertex, Vertex)> = HashMap::new();
    for m in (1..=i).rev() {
        let mut members = Vec::new();
        let mut prev: Option<Vertex> = None;
        for j in 0..m {
            let w = binomial(m, j);
            let ids: Vec<Vertex> = (1..=w).map(|t| b.vertex(format!("P{m}[{j}].{t}"))).collect();
            for (&u, &v) in ids.iter().zip(&ids[1..]) {
                b.edges.push((u, v));
            }
            if let Some(p) = prev {
                b.edges.push((p, ids[0]));
            }
            prev = ids.last().copied();
            seg.insert((m, j), (ids[0], *ids.last().unwrap()));
            members.extend(ids.iter().map(|&v| b.names[v].clone()));
        }
        b.group(format!("P{m}"), &members);
    }
    for c in 0..i {
        for m in (c + 2..=i).rev() {
            b.edges.push((seg[&(m, c)].1, seg[&(m - 1, c)].0));
        }
    }
    for j in 1..i.saturating_sub(1) {
        b.edges.push((seg[&(j, j - 1)].1, seg[&(i, j + 1)].0));
    }
    let expected = Expected { optimal_value: 2.min(i), greedy_value: i, optimal_members: 2.min(i), greedy_members: i };
    let inst = b.finish(family, expected);
    assert_unique_first_path(&inst);
    Ok(inst)
}

/// The top path must be the one and only maximum-gain path.
fn assert_unique_first_path(inst: &AdversarialInstance) {
    let u = UncoveredSet::full(inst.dag.n());
    let i = inst.family.parameter();
    let choice = max_coverage_path(&inst.dag, &u);
    assert_eq!(choice.gain, (1 << i) - 1, "gc({i}): top path has the wrong weight");
    assert_eq!(count_optimal_paths(&inst.dag, &u), 1, "gc({i}): maximum path is not unique");
    assert_eq!(choice.path.vertices(), inst.group(&format!("P{i}")).unwrap(), "gc({i}): greedy misses P{i}");
}

/// Bipartite `X -> Y`; `x_j` and `y_j'` are incomparable exactly when both lie
/// in one `T_m = {x_j, y_j : 2^(m-1) < j <= 2^m}`.
pub fn gen_ga(i: usize) -> Result<AdversarialInstance, DomainError> {
    let family = InstanceFamily::GreedyAntichainLower(i);
    check_domain(family, i)?;
    let size = 1usize << i;
    let block = |j: usize| (usize::BITS - (j - 1).leading_zeros()) as usize; // T index, 0 for j = 1
    let mut b = Builder::default();
    for m in (1..=i).rev() {
        let range = (1 << (m - 1)) + 1..=(1 << m);
        let names = [row("", 'x', range.clone()), row("", 'y', range)].concat();
        for n in &names {
            b.vertex(n.clone());
        }
        b.group(format!("T{m}"), &names);
    }
    b.vertex("x1".into());
    b.vertex("y1".into());
    for j in 1..=size {
        for jj in 1..=size {
            if block(j) == 0 || block(j) != block(jj) {
                b.edge(&format!("x{j}"), &format!("y{jj}"));
            }
        }
    }
    b.group("X".into(), &row("", 'x', 1..=size));
    b.group("Y".into(), &row("", 'y', 1..=size));
    let expected = Expected { optimal_value: 2, greedy_value: i + 2, optimal_members: 2, greedy_members: i + 2 };
    Ok(b.finish(family, expected))
}

fn check_domain(family: InstanceFamily, p: usize) -> Result<(), DomainError> {
    let min = family.minimum();
    if p < min {
        return Err(DomainError { family, min });
    }
    Ok(())
}
