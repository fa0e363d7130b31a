//! Canonical labeling of small simple graphs by individualization-refinement.

use super::{Graph, GraphError};

pub const MAX_CANON_VERTICES: usize = 16;

/// A canonical relabeling, packed as the upper-triangle adjacency bits.
/// Two simple graphs are isomorphic iff their canonical forms are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalGraph {
    vertex_count: u8,
    code: u128,
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    // Lexicographic index of the pair (i, j), i < j, 0-based vertices.
    let before: usize = (0..i).map(|r| n - 1 - r).sum();
    (127 - (before + (j - i - 1))) as u32
}

impl CanonicalGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count as usize
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    /// The canonical representative, edges in lexicographic order.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.code >> pair_bit(n, i, j) & 1 == 1 {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        Graph::new(n, edges).expect("valid endpoints")
    }

    pub(crate) fn from_adjacency(adj: &[u16]) -> Self {
        Canonizer::new(adj).run()
    }
}

/// Canonical form of a simple graph on at most 16 vertices.
pub fn canonical_form(g: &Graph) -> Result<CanonicalGraph, GraphError> {
    if !g.is_simple() {
        return Err(GraphError::Unsupported(
            "canonical forms need a simple graph".into(),
        ));
    }
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::Unsupported(format!(
            "canonical forms support at most {MAX_CANON_VERTICES} vertices"
        )));
    }
    let mut adj = vec![0u16; n];
    for &(u, v) in g.edges() {
        adj[u - 1] |= 1 << (v - 1);
        adj[v - 1] |= 1 << (u - 1);
    }
    Ok(CanonicalGraph::from_adjacency(&adj))
}

struct Canonizer<'a> {
    adj: &'a [u16],
    best: Option<u128>,
}

type Partition = Vec<Vec<usize>>;

impl<'a> Canonizer<'a> {
    fn new(adj: &'a [u16]) -> Self {
        Canonizer { adj, best: None }
    }

    fn run(mut self) -> CanonicalGraph {
        let n = self.adj.len();
        let root = vec![(0..n).collect::<Vec<_>>()];
        self.search(root);
        CanonicalGraph {
            vertex_count: n as u8,
            code: self.best.unwrap_or(0),
        }
    }

    fn cell_mask(cell: &[usize]) -> u16 {
        cell.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Coarsest equitable refinement; cells are split in signature order so the
    /// result depends only on the graph structure.
    fn refine(&self, mut p: Partition) -> Partition {
        'outer: loop {
            let masks: Vec<u16> = p.iter().map(|c| Self::cell_mask(c)).collect();
            for ci in 0..p.len() {
                if p[ci].len() == 1 {
                    continue;
                }
                let sig = |v: usize| -> Vec<u32> {
                    masks
                        .iter()
                        .map(|&m| (self.adj[v] & m).count_ones())
                        .collect()
                };
                let first = sig(p[ci][0]);
                if p[ci].iter().all(|&v| sig(v) == first) {
                    continue;
                }
                let mut tagged: Vec<(Vec<u32>, usize)> =
                    p[ci].iter().map(|&v| (sig(v), v)).collect();
                tagged.sort();
                let mut groups: Vec<Vec<usize>> = Vec::new();
                for (k, (s, v)) in tagged.iter().enumerate() {
                    if k == 0 || *s != tagged[k - 1].0 {
                        groups.push(Vec::new());
                    }
                    groups.last_mut().unwrap().push(*v);
                }
                p.splice(ci..=ci, groups);
                continue 'outer;
            }
            return p;
        }
    }

    fn code_of(&self, p: &Partition) -> u128 {
        let n = self.adj.len();
        let mut label = vec![0usize; n];
        for (i, cell) in p.iter().enumerate() {
            label[cell[0]] = i;
        }
        let mut code = 0u128;
        for u in 0..n {
            let mut m = self.adj[u];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let (a, b) = (label[u].min(label[v]), label[u].max(label[v]));
                code |= 1 << pair_bit(n, a, b);
            }
        }
        code
    }

    fn search(&mut self, p: Partition) {
        let p = self.refine(p);
        let Some(ci) = p.iter().position(|c| c.len() > 1) else {
            let code = self.code_of(&p);
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        };
        let cell = p[ci].clone();
        for (k, &v) in cell.iter().enumerate() {
            // Twins in a cell are swapped by an automorphism fixing the partition.
            let twin_of_earlier = cell[..k]
                .iter()
                .any(|&u| self.adj[u] & !(1 << v) == self.adj[v] & !(1 << u));
            if twin_of_earlier {
                continue;
            }
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            let mut child = p.clone();
            child.splice(ci..=ci, [vec![v], rest]);
            self.search(child);
        }
    }
}
