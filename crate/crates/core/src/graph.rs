//! Undirected simple graphs, their combinatorial Laplacian, induced
//! subgraphs and eigenvector sign supports.

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Undirected simple graph on nodes `0..n` with a canonical edge list
/// (`u < v`, sorted, no duplicates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !set.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Component label per node; labels are assigned in order of the
    /// smallest node of each component.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Combinatorial Laplacian `L = D - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            l[(u, v)] = -1.0;
            l[(v, u)] = -1.0;
            l[(u, u)] += 1.0;
            l[(v, v)] += 1.0;
        }
        l
    }

    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<InducedSubgraph> {
        let mut to_parent: Vec<usize> = nodes.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        if let Some(&bad) = to_parent.iter().find(|&&u| u >= self.n) {
            return Err(Error::NodeOutOfRange { node: bad, n: self.n });
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &u) in to_parent.iter().enumerate() {
            local[u] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        let graph = Graph::new(to_parent.len(), edges)?;
        Ok(InducedSubgraph { graph, to_parent })
    }
}

/// Graph induced on a node subset, with the map back to parent indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl InducedSubgraph {
    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&i| self.to_parent[i]).collect()
    }

    /// Restricts a parent-indexed vector to the subgraph's nodes.
    pub fn restrict(&self, values: &[f64]) -> Vec<f64> {
        self.to_parent.iter().map(|&u| values[u]).collect()
    }
}

/// Nonnegative node weights.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeWeights(Vec<f64>);

impl NodeWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some((node, &value)) = w.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidWeight { node, value });
        }
        Ok(Self(w))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    /// `w_i = y_i^2`.
    pub fn from_eigenvector(y: &[f64]) -> Self {
        Self(y.iter().map(|v| v * v).collect())
    }

    pub fn check_len(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.node_count() {
            return Err(Error::WeightLength { expected: g.node_count(), got: self.0.len() });
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn of(&self, set: &[usize]) -> f64 {
        set.iter().map(|&i| self.0[i]).sum()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self(self.0.iter().map(|x| x * t).collect())
    }

    pub fn restrict(&self, sub: &InducedSubgraph) -> Self {
        Self(sub.restrict(&self.0))
    }
}

impl std::ops::Index<usize> for NodeWeights {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Strict sign supports of a vector with a zero band of half-width `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignSupport {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub zero: Vec<usize>,
    pub tau: f64,
}

impl SignSupport {
    pub fn new(y: &[f64], tau: f64) -> Self {
        let mut s = SignSupport { positive: Vec::new(), negative: Vec::new(), zero: Vec::new(), tau };
        for (i, &v) in y.iter().enumerate() {
            if v > tau {
                s.positive.push(i);
            } else if v < -tau {
                s.negative.push(i);
            } else {
                s.zero.push(i);
            }
        }
        s
    }

    /// Uses the default band `1e-9 * max|y_i|`.
    pub fn with_default_tau(y: &[f64]) -> Self {
        Self::new(y, default_tau(y))
    }
}

pub fn default_tau(y: &[f64]) -> f64 {
    1e-9 * y.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}
