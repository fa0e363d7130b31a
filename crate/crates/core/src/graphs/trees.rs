//! Spanning trees: enumeration and weighted counts via the Matrix-Tree theorem.

use super::{EdgeSet, Graph, UnionFind};
use crate::linalg::{bareiss, PrimeField};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Every spanning tree of `g` exactly once, as edge sets, in lexicographic
/// order of their sorted edge lists. Loops never occur in a tree.
/// Empty for disconnected graphs; a single empty set for one vertex.
pub fn enumerate_spanning_trees(g: &Graph) -> Vec<EdgeSet> {
    assert!(g.edge_count() <= 64, "edge sets hold at most 64 edges");
    let need = g.vertex_count() - 1;
    let mut out = Vec::new();
    if g.is_connected() {
        grow(g, 0, need, UnionFind::new(g.vertex_count()), 0, &mut out);
    }
    out
}

fn grow(g: &Graph, next: usize, need: usize, uf: UnionFind, mask: u64, out: &mut Vec<EdgeSet>) {
    if need == 0 {
        out.push(EdgeSet::from_mask(mask));
        return;
    }
    if g.edge_count() - next < need {
        return;
    }
    let (u, v) = g.edges()[next];
    let mut with = uf.clone();
    if with.union(u - 1, v - 1) {
        grow(g, next + 1, need - 1, with, mask | 1 << next, out);
    }
    grow(g, next + 1, need, uf, mask, out);
}

pub fn spanning_tree_count(g: &Graph) -> BigInt {
    weighted_tree_value(g, &vec![BigInt::one(); g.edge_count()])
}

/// Reduced weighted Laplacian with the last vertex deleted, loops skipped.
fn reduced_laplacian<T: Clone>(
    g: &Graph,
    weights: &[T],
    zero: T,
    add: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
) -> Vec<Vec<T>> {
    let m = g.vertex_count() - 1;
    let mut lap = vec![vec![zero; m]; m];
    for (&(u, v), w) in g.edges().iter().zip(weights) {
        if u == v {
            continue;
        }
        let (a, b) = (u - 1, v - 1);
        if a < m {
            lap[a][a] = add(&lap[a][a], w);
        }
        if b < m {
            lap[b][b] = add(&lap[b][b], w);
        }
        if a < m && b < m {
            lap[a][b] = sub(&lap[a][b], w);
            lap[b][a] = sub(&lap[b][a], w);
        }
    }
    lap
}

/// `sum over spanning trees T of prod_{e in T} w_e`, exactly. Zero when `g` is
/// disconnected.
pub fn weighted_tree_value(g: &Graph, weights: &[BigInt]) -> BigInt {
    assert_eq!(weights.len(), g.edge_count(), "one weight per edge");
    let m = g.vertex_count() - 1;
    if m == 0 {
        return BigInt::one();
    }
    let lap = reduced_laplacian(g, weights, BigInt::zero(), |a, b| a + b, |a, b| a - b);
    let ech = bareiss(lap, m);
    if ech.pivots.len() < m {
        return BigInt::zero();
    }
    let det = ech.rows[m - 1][m - 1].clone();
    if ech.swaps % 2 == 1 {
        -det
    } else {
        det
    }
}

/// [`weighted_tree_value`] over `F_p`; weights and result in Montgomery form.
pub fn weighted_tree_value_mod(g: &Graph, field: PrimeField, weights: &[u64]) -> u64 {
    assert_eq!(weights.len(), g.edge_count(), "one weight per edge");
    let lap = reduced_laplacian(
        g,
        weights,
        0u64,
        |a, b| field.add(*a, *b),
        |a, b| field.sub(*a, *b),
    );
    determinant_mod(lap, field)
}

/// Determinant of a small dense matrix over `F_p` (Montgomery form).
pub(crate) fn determinant_mod(mut a: Vec<Vec<u64>>, field: PrimeField) -> u64 {
    let m = a.len();
    let mut det = field.one();
    for c in 0..m {
        let Some(pr) = (c..m).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if pr != c {
            a.swap(pr, c);
            det = field.neg(det);
        }
        det = field.mul(det, a[c][c]);
        let inv = field.inv(a[c][c]).expect("nonzero pivot");
        for r in c + 1..m {
            if a[r][c] == 0 {
                continue;
            }
            let factor = field.mul(a[r][c], inv);
            for j in c..m {
                let t = field.mul(factor, a[c][j]);
                a[r][j] = field.sub(a[r][j], t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PRIME_A;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_spanning_trees(&Graph::complete(3)).len(), 3);
        assert_eq!(enumerate_spanning_trees(&Graph::complete(4)).len(), 16);
        let path = Graph::new(4, vec![(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            enumerate_spanning_trees(&path),
            vec![EdgeSet::from_indices([1, 2, 3])]
        );
        assert!(enumerate_spanning_trees(&Graph::empty(2)).is_empty());
        assert_eq!(spanning_tree_count(&Graph::complete(4)), BigInt::from(16));
    }

    #[test]
    fn weighted_values() {
        assert_eq!(
            weighted_tree_value(&Graph::complete(3), &ints(&[2, 3, 5])),
            BigInt::from(31)
        );
        assert_eq!(
            weighted_tree_value(&Graph::complete(2), &ints(&[7])),
            BigInt::from(7)
        );
        assert_eq!(weighted_tree_value(&Graph::empty(3), &[]), BigInt::zero());
        let looped = Graph::new(2, vec![(1, 2), (1, 1), (1, 2)]).unwrap();
        assert_eq!(
            weighted_tree_value(&looped, &ints(&[4, 100, 5])),
            BigInt::from(9)
        );
    }

    #[test]
    fn modular_value_matches_exact() {
        let f = PrimeField::new(PRIME_A);
        let g = Graph::complete(5);
        let w: Vec<i64> = (1..=10).collect();
        let exact = weighted_tree_value(&g, &ints(&w));
        let wm: Vec<u64> = w.iter().map(|&x| f.from_i64(x)).collect();
        let modular = f.to_u64(weighted_tree_value_mod(&g, f, &wm));
        assert_eq!(BigInt::from(modular), exact % BigInt::from(PRIME_A));
    }
}
