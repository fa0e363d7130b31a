//! Isomorph-free generation of small simple graphs.

use super::canon::CanonicalGraph;
use super::{Graph, GraphError};
use crate::par;
use std::collections::BTreeSet;

pub const MAX_ENUMERATION_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFilter {
    All,
    Connected,
    Biconnected,
}

impl GraphFilter {
    fn accepts(self, g: &Graph) -> bool {
        match self {
            GraphFilter::All => true,
            GraphFilter::Connected => g.is_connected(),
            GraphFilter::Biconnected => g.is_biconnected(),
        }
    }
}

/// One representative per isomorphism class of simple graphs on `vertex_count`
/// vertices passing `filter`, ordered by edge count and then canonical code.
///
/// Classes are grown one edge at a time: every class with `m + 1` edges arises
/// from some class with `m` edges by adding one edge, and canonical forms
/// collapse the duplicates.
pub fn enumerate_nonisomorphic(
    vertex_count: usize,
    filter: GraphFilter,
) -> Result<Vec<Graph>, GraphError> {
    if vertex_count == 0 || vertex_count > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::Unsupported(format!(
            "enumeration supports 1..={MAX_ENUMERATION_VERTICES} vertices, got {vertex_count}"
        )));
    }
    let n = vertex_count;
    let max_edges = n * (n - 1) / 2;
    let mut level: Vec<CanonicalGraph> = vec![CanonicalGraph::from_adjacency(&vec![0u16; n])];
    let mut out = Vec::new();
    for m in 0..=max_edges {
        out.extend(
            level
                .iter()
                .map(|c| c.to_graph())
                .filter(|g| filter.accepts(g)),
        );
        if m == max_edges {
            break;
        }
        let children: Vec<Vec<CanonicalGraph>> = par::map(&level, |c| augmentations(c));
        let next: BTreeSet<CanonicalGraph> = children.into_iter().flatten().collect();
        level = next.into_iter().collect();
    }
    Ok(out)
}

fn augmentations(c: &CanonicalGraph) -> Vec<CanonicalGraph> {
    let g = c.to_graph();
    let n = g.vertex_count();
    let mut adj = vec![0u16; n];
    for &(u, v) in g.edges() {
        adj[u - 1] |= 1 << (v - 1);
        adj[v - 1] |= 1 << (u - 1);
    }
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 0 {
                let mut a = adj.clone();
                a[u] |= 1 << v;
                a[v] |= 1 << u;
                out.insert(CanonicalGraph::from_adjacency(&a));
            }
        }
    }
    out.into_iter().collect()
}
