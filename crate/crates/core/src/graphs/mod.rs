//! Numbered-edge multigraphs, their interchange formats, and the spanning-tree
//! machinery behind `f_G`.

mod canon;
mod enumerate;
mod formats;
mod structure;
mod trees;

pub use canon::{canonical_form, CanonicalGraph};
pub use enumerate::{enumerate_nonisomorphic, GraphFilter};
pub use formats::{emit_edge_bits, emit_graph6, parse_edge_bits, parse_graph6, read_records};
pub use structure::{biconnected_components, contract_edges, is_acyclic, Component};
pub(crate) use trees::determinant_mod;
pub use trees::{
    enumerate_spanning_trees, spanning_tree_count, weighted_tree_value, weighted_tree_value_mod,
};

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("endpoint {vertex} outside 1..={vertex_count}")]
    BadEndpoint { vertex: usize, vertex_count: usize },
    #[error("unsupported graph: {0}")]
    Unsupported(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge set contains a cycle")]
    Cycle,
    #[error("edge sets are limited to 64 edges, graph has {0}")]
    TooManyEdges(usize),
}

/// Subset of the edges `1..=n` of a graph, as a bitmask (bit `i-1` is edge `i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const fn empty() -> Self {
        EdgeSet(0)
    }

    pub const fn from_mask(mask: u64) -> Self {
        EdgeSet(mask)
    }

    /// Panics on an index outside `1..=64`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = EdgeSet(0);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        assert!((1..=64).contains(&i), "edge index {i} out of range");
        self.0 |= 1 << (i - 1);
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Edge indices in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i + 1
            })
        })
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// A multigraph on vertices `1..=vertex_count` whose edges are numbered by
/// their position in `edges` (edge `i` is `edges[i-1]` and carries variable `x_i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Unsupported("graph without vertices".into()));
        }
        for &(u, v) in &edges {
            for w in [u, v] {
                if w == 0 || w > vertex_count {
                    return Err(GraphError::BadEndpoint {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph::new(vertex_count, Vec::new()).expect("at least one vertex")
    }

    pub fn complete(vertex_count: usize) -> Self {
        let edges = (1..=vertex_count)
            .flat_map(|u| (u + 1..=vertex_count).map(move |v| (u, v)))
            .collect();
        Graph::new(vertex_count, edges).expect("valid endpoints")
    }

    pub fn cycle(vertex_count: usize) -> Self {
        let mut edges: Vec<_> = (1..vertex_count).map(|u| (u, u + 1)).collect();
        edges.push((1, vertex_count));
        Graph::new(vertex_count, edges).expect("valid endpoints")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints of edge `i` (1-based).
    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i - 1]
    }

    pub fn all_edges(&self) -> Result<EdgeSet, GraphError> {
        let n = self.edge_count();
        if n > 64 {
            return Err(GraphError::TooManyEdges(n));
        }
        Ok(EdgeSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 }))
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut parts = self.vertex_count;
        for &(u, v) in &self.edges {
            if uf.union(u - 1, v - 1) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Connected on at least two vertices with no cut vertex. Loops are ignored.
    pub fn is_biconnected(&self) -> bool {
        if self.vertex_count < 2 || !self.is_connected() {
            return false;
        }
        (1..=self.vertex_count).all(|cut| {
            if self.vertex_count == 2 {
                return true;
            }
            let mut uf = UnionFind::new(self.vertex_count);
            let mut parts = self.vertex_count - 1;
            for &(u, v) in &self.edges {
                if u != cut && v != cut && uf.union(u - 1, v - 1) {
                    parts -= 1;
                }
            }
            parts == 1
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Same graph with edges renumbered in lexicographic order of their
    /// (smaller, larger) endpoint pairs.
    pub fn sorted_edges(&self) -> Graph {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        Graph {
            vertex_count: self.vertex_count,
            edges,
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices:", self.vertex_count)?;
        for &(u, v) in &self.edges {
            write!(f, " ({u},{v})")?;
        }
        Ok(())
    }
}

/// Disjoint-set forest over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_set_basics() {
        let s = EdgeSet::from_indices([1, 3, 64]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(65));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 64]);
        assert_eq!(EdgeSet::from_indices([2, 5]).to_string(), "{2,5}");
    }

    #[test]
    fn predicates() {
        let k4 = Graph::complete(4);
        assert!(k4.is_simple() && k4.is_connected() && k4.is_biconnected());
        let path = Graph::new(4, vec![(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(path.is_connected() && !path.is_biconnected());
        let multi = Graph::new(2, vec![(1, 2), (1, 2), (2, 2)]).unwrap();
        assert!(!multi.is_simple() && multi.has_loops() && multi.is_biconnected());
        assert!(!Graph::empty(3).is_connected());
        assert!(Graph::new(2, vec![(1, 3)]).is_err());
    }
}
