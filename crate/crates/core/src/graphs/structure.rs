//! Biconnected components, acyclicity and edge contraction.

use super::{EdgeSet, Graph, GraphError, UnionFind};

/// A biconnected component, relabeled onto its own vertices `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `edge_map[i-1]` is the edge of the parent graph that became edge `i`.
    pub edge_map: Vec<usize>,
    /// `vertex_map[v-1]` is the parent vertex that became vertex `v`.
    pub vertex_map: Vec<usize>,
}

/// True iff `set` contains no cycle of `g` (a loop counts as a cycle).
pub fn is_acyclic(g: &Graph, set: EdgeSet) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    set.iter().filter(|&i| i <= g.edge_count()).all(|i| {
        let (u, v) = g.edge(i);
        uf.union(u - 1, v - 1)
    })
}

/// `G/I`: endpoints of every edge of `I` are merged. All edges keep their numbers;
/// the edges of `I` and any edge parallel to a merged path become loops.
pub fn contract_edges(g: &Graph, set: EdgeSet) -> Result<Graph, GraphError> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for i in set.iter() {
        if i > g.edge_count() {
            return Err(GraphError::Unsupported(format!("edge {i} not in graph")));
        }
        let (u, v) = g.edge(i);
        if !uf.union(u - 1, v - 1) {
            return Err(GraphError::Cycle);
        }
    }
    let mut label = vec![0usize; n];
    let mut next = 0;
    for v in 0..n {
        let r = uf.find(v);
        if r == v {
            next += 1;
            label[v] = next;
        }
    }
    for v in 0..n {
        label[v] = label[uf.find(v)];
    }
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (label[u - 1], label[v - 1]))
        .collect();
    Graph::new(next, edges)
}

/// Edge partition of a connected graph into biconnected components (blocks).
/// Each loop forms a component of its own on one vertex.
pub fn biconnected_components(g: &Graph) -> Result<Vec<Component>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            blocks.push(vec![idx + 1]);
        } else {
            adj[u].push((v, idx + 1));
            adj[v].push((u, idx + 1));
        }
    }
    // Iterative Hopcroft-Tarjan on edges; parallel edges are distinguished by id.
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize, usize)> = Vec::new(); // (vertex, parent edge, next adj index)
    time += 1;
    disc[1] = time;
    low[1] = time;
    stack.push((1, 0, 0));
    while let Some(top) = stack.last_mut() {
        let (v, pe) = (top.0, top.1);
        if top.2 < adj[v].len() {
            let (w, e) = adj[v][top.2];
            top.2 += 1;
            if e == pe {
                continue;
            }
            if disc[w] == 0 {
                edge_stack.push(e);
                time += 1;
                disc[w] = time;
                low[w] = time;
                stack.push((w, e, 0));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
    }
    let mut out: Vec<Component> = blocks
        .into_iter()
        .map(|mut block| {
            block.sort_unstable();
            let mut verts: Vec<usize> = block
                .iter()
                .flat_map(|&e| {
                    let (u, v) = g.edge(e);
                    [u, v]
                })
                .collect();
            verts.sort_unstable();
            verts.dedup();
            let pos = |x: usize| verts.binary_search(&x).unwrap() + 1;
            let edges = block
                .iter()
                .map(|&e| {
                    let (u, v) = g.edge(e);
                    (pos(u), pos(v))
                })
                .collect();
            Component {
                graph: Graph::new(verts.len(), edges).expect("relabeled endpoints"),
                edge_map: block,
                vertex_map: verts,
            }
        })
        .collect();
    out.sort_by_key(|c| c.edge_map[0]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowtie_splits_at_the_cut_vertex() {
        let g = Graph::new(5, vec![(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let comps = biconnected_components(&g).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].edge_map, vec![1, 2, 3]);
        assert_eq!(comps[1].edge_map, vec![4, 5, 6]);
        assert!(comps
            .iter()
            .all(|c| c.graph.sorted_edges() == Graph::complete(3)));
    }

    #[test]
    fn k4_and_path() {
        assert_eq!(
            biconnected_components(&Graph::complete(4)).unwrap().len(),
            1
        );
        let path = Graph::new(4, vec![(1, 2), (2, 3), (3, 4)]).unwrap();
        let comps = biconnected_components(&path).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.graph.edge_count() == 1));
        assert_eq!(
            biconnected_components(&Graph::empty(2)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn parallel_edges_and_loops() {
        let g = Graph::new(3, vec![(1, 2), (1, 2), (2, 3), (3, 3)]).unwrap();
        let comps = biconnected_components(&g).unwrap();
        let maps: Vec<_> = comps.iter().map(|c| c.edge_map.clone()).collect();
        assert_eq!(maps, vec![vec![1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn contraction_examples() {
        let k3 = Graph::complete(3);
        let g1 = contract_edges(&k3, EdgeSet::from_indices([1])).unwrap();
        assert_eq!(g1.vertex_count(), 2);
        assert_eq!(g1.edges(), &[(1, 1), (1, 2), (1, 2)]);
        let g2 = contract_edges(&k3, EdgeSet::from_indices([1, 2])).unwrap();
        assert_eq!(g2.vertex_count(), 1);
        assert_eq!(g2.edges(), &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(contract_edges(&k3, EdgeSet::empty()).unwrap(), k3);
        assert_eq!(
            contract_edges(&k3, EdgeSet::from_indices([1, 2, 3])),
            Err(GraphError::Cycle)
        );
    }

    #[test]
    fn acyclicity() {
        let k3 = Graph::complete(3);
        assert!(!is_acyclic(&k3, EdgeSet::from_indices([1, 2, 3])));
        assert!(is_acyclic(&k3, EdgeSet::from_indices([1, 3])));
        assert!(is_acyclic(&k3, EdgeSet::empty()));
    }
}
