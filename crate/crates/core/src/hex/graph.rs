//! Simple undirected graphs with maximum degree two, and their decomposition
//! into isolated vertices, simple paths and simple cycles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a node outside the graph")]
    NodeOutOfRange(usize, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {node} has degree {degree}, at most 2 is allowed")]
    DegreeTooHigh { node: usize, degree: usize },
}

/// An undirected simple graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> SimpleGraph {
        SimpleGraph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph, GraphError> {
        let mut g = SimpleGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a >= self.adjacency.len() || b >= self.adjacency.len() {
            return Err(GraphError::NodeOutOfRange(a, b));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.adjacency[a].contains(&b) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edges as `(min, max)` pairs.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Decomposition {
    pub isolated: Vec<usize>,
    /// Node sequences from one degree-one endpoint to the other.
    pub paths: Vec<Vec<usize>>,
    /// Node sequences around each cycle; the closing edge is implicit.
    pub cycles: Vec<Vec<usize>>,
}

impl Decomposition {
    /// The edges covered by the paths and cycles, as `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let ordered = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut out = Vec::new();
        for p in &self.paths {
            out.extend(p.windows(2).map(|w| ordered(w[0], w[1])));
        }
        for c in &self.cycles {
            out.extend(c.windows(2).map(|w| ordered(w[0], w[1])));
            out.push(ordered(c[c.len() - 1], c[0]));
        }
        out
    }

    /// The path having `node` as an endpoint, if any.
    pub fn path_from(&self, node: usize) -> Option<&[usize]> {
        self.paths
            .iter()
            .find(|p| p.first() == Some(&node) || p.last() == Some(&node))
            .map(Vec::as_slice)
    }
}

/// Splits a graph of maximum degree two into its components, each classified
/// as an isolated vertex, a simple path or a simple cycle.
pub fn decompose(g: &SimpleGraph) -> Result<Decomposition, GraphError> {
    if let Some(node) = (0..g.node_count()).find(|&v| g.degree(v) > 2) {
        return Err(GraphError::DegreeTooHigh {
            node,
            degree: g.degree(node),
        });
    }
    let n = g.node_count();
    let mut visited = vec![false; n];
    let mut out = Decomposition::default();

    // Walk from `start` along unvisited nodes until stuck.
    let walk = |start: usize, visited: &mut Vec<bool>| {
        let mut seq = vec![start];
        visited[start] = true;
        let mut current = start;
        while let Some(&next) = g.neighbors(current).iter().find(|&&x| !visited[x]) {
            visited[next] = true;
            seq.push(next);
            current = next;
        }
        seq
    };

    for v in 0..n {
        match g.degree(v) {
            0 => {
                visited[v] = true;
                out.isolated.push(v);
            }
            1 if !visited[v] => out.paths.push(walk(v, &mut visited)),
            _ => {}
        }
    }
    // Everything left has degree two and sits on a cycle.
    for v in 0..n {
        if !visited[v] {
            out.cycles.push(walk(v, &mut visited));
        }
    }
    Ok(out)
}
