//! Edge-list DAG files.
//!
//! ```text
//! # comment
//! 3        vertex count
//! a        optional declaration, fixes the id of `a`
//! a b      edge a -> b
//! ```
//!
//! Names get dense ids in order of first appearance. Unnamed ids left over
//! after the last line become isolated vertices.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use gkcover::{Dag, DagError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edges form a cycle through {0}")]
    Cycle(String),
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

#[derive(Debug, Clone)]
pub struct DagFile {
    pub dag: Dag,
    pub names: Vec<String>,
    /// Edges as written, duplicates included.
    pub edges: Vec<(usize, usize)>,
}

impl DagFile {
    pub fn new(names: Vec<String>, dag: Dag) -> Self {
        let edges = dag.edges().to_vec();
        DagFile { dag, names, edges }
    }

    pub fn name_lists(&self, lists: &[Vec<usize>]) -> Vec<Vec<String>> {
        lists.iter().map(|l| l.iter().map(|&v| self.names[v].clone()).collect()).collect()
    }

    /// Inverse of [`DagFile::name_lists`].
    pub fn id_lists(&self, lists: &[Vec<String>]) -> Option<Vec<Vec<usize>>> {
        let index: HashMap<&str, usize> = self.names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        lists.iter().map(|l| l.iter().map(|n| index.get(n.as_str()).copied()).collect()).collect()
    }
}

pub fn parse_dag(text: &str) -> Result<DagFile, FormatError> {
    let mut count: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let Some(n) = count else {
            if tokens.len() != 1 {
                return Err(parse_error(line, "expected the vertex count"));
            }
            count =
                Some(tokens[0].parse().map_err(|_| parse_error(line, format!("bad vertex count {:?}", tokens[0])))?);
            continue;
        };
        if tokens.len() > 2 {
            return Err(parse_error(line, format!("expected at most two names, found {}", tokens.len())));
        }
        let mut ids = Vec::with_capacity(2);
        for t in &tokens {
            let id = match index.get(*t) {
                Some(&id) => id,
                None => {
                    if names.len() == n {
                        return Err(parse_error(line, format!("more than {n} distinct vertices")));
                    }
                    index.insert(t.to_string(), names.len());
                    names.push(t.to_string());
                    names.len() - 1
                }
            };
            ids.push(id);
        }
        if let [u, v] = ids[..] {
            if u == v {
                return Err(parse_error(line, format!("self-loop on {}", names[u])));
            }
            edges.push((u, v));
        }
    }
    let n = count.ok_or_else(|| parse_error(last.max(1), "missing vertex count"))?;
    let taken: HashSet<String> = names.iter().cloned().collect();
    let mut fresh = (1..).map(|j| j.to_string()).filter(|s| !taken.contains(s));
    while names.len() < n {
        names.push(fresh.next().expect("unbounded supply of names"));
    }
    match Dag::new(n, edges.iter().copied()) {
        Ok(dag) => Ok(DagFile { dag, names, edges }),
        Err(DagError::Cycle(v)) => Err(FormatError::Cycle(names[v].clone())),
        Err(e) => Err(parse_error(last, e.to_string())),
    }
}

/// Count, one declaration per vertex in id order, then the edges as stored.
/// Parsing the result gives back the same ids and edge multiset.
pub fn serialize(file: &DagFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", file.names.len());
    for name in &file.names {
        let _ = writeln!(out, "{name}");
    }
    for &(u, v) in &file.edges {
        let _ = writeln!(out, "{} {}", file.names[u], file.names[v]);
    }
    out
}
